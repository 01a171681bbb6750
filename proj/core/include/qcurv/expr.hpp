#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcurv/errors.hpp"

namespace qcurv {

enum class Fn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt };
enum class BinOp { Add, Sub, Mul, Div, Pow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over numeric literals, named coordinates,
/// the five binary operators, unary negation and the fixed function set.
struct Expr {
  enum class Kind { Number, Var, Neg, Bin, Call };

  Kind kind;
  double number = 0.0;   // Kind::Number
  int var = -1;          // Kind::Var, 0-based coordinate index
  std::string name;      // Kind::Var, declared coordinate name
  BinOp op = BinOp::Add; // Kind::Bin
  Fn fn = Fn::Sin;       // Kind::Call
  ExprPtr lhs, rhs;      // children; Neg and Call use lhs only
};

ExprPtr make_number(double v);
ExprPtr make_var(int index, std::string name);
ExprPtr make_neg(ExprPtr e);
ExprPtr make_bin(BinOp op, ExprPtr a, ExprPtr b);
ExprPtr make_call(Fn f, ExprPtr a);

std::string_view fn_name(Fn f);

/// Parses `text` against the declared coordinate names. Precedence, low to
/// high: +,- then *,/ then unary minus then ^ (right-associative), so
/// "-x^2" is -(x^2) and "-x*y" is (-x)*y. Unknown identifiers are rejected.
/// `line` and `column_base` seed source positions for error reporting.
ExprPtr parse_expression(std::string_view text,
                         std::span<const std::string> coords, int line = 1,
                         int column_base = 1);

/// Prints with minimal parentheses; parse(print(e)) is structurally
/// identical to e.
std::string print_expression(const Expr& e);
inline std::string print_expression(const ExprPtr& e) {
  return print_expression(*e);
}

bool structurally_equal(const Expr& a, const Expr& b);
inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  return structurally_equal(*a, *b);
}

/// Plain double evaluation. Domain violations and non-finite intermediate
/// results throw EvalError naming the offending subexpression.
double eval_value(const Expr& e, std::span<const double> point);

/// Replaces every Var node of index i by replacements[i].
ExprPtr substitute(const ExprPtr& e, std::span<const ExprPtr> replacements);

/// Formats a double so that it parses back to the identical value.
std::string format_double(double v);

}  // namespace qcurv
