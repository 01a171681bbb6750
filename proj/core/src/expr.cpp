#include "qcurv/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>

namespace qcurv {

namespace {

const std::array<std::pair<std::string_view, Fn>, 9> kFunctions = {{
    {"sin", Fn::Sin},
    {"cos", Fn::Cos},
    {"tan", Fn::Tan},
    {"sinh", Fn::Sinh},
    {"cosh", Fn::Cosh},
    {"tanh", Fn::Tanh},
    {"exp", Fn::Exp},
    {"log", Fn::Log},
    {"sqrt", Fn::Sqrt},
}};

std::optional<Fn> lookup_fn(std::string_view name) {
  for (const auto& [n, f] : kFunctions)
    if (n == name) return f;
  return std::nullopt;
}

}  // namespace

std::string_view fn_name(Fn f) {
  for (const auto& [n, g] : kFunctions)
    if (g == f) return n;
  return "?";
}

ExprPtr make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Number;
  e->number = v;
  return e;
}

ExprPtr make_var(int index, std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Var;
  e->var = index;
  e->name = std::move(name);
  return e;
}

ExprPtr make_neg(ExprPtr a) {
  // Negated literals are folded so that every tree is in the parser's
  // canonical image and print/parse round-trips exactly.
  if (a->kind == Expr::Kind::Number) return make_number(-a->number);
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Neg;
  e->lhs = std::move(a);
  return e;
}

ExprPtr make_bin(BinOp op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Bin;
  e->op = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr make_call(Fn f, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Call;
  e->fn = f;
  e->lhs = std::move(a);
  return e;
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum class Type {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End
  };
  Type type = Type::End;
  double number = 0.0;
  std::string text;
  int column = 0;
};

class Lexer {
public:
  Lexer(std::string_view src, int line, int column_base)
      : src_(src), line_(line), column_base_(column_base) {
    advance();
  }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  int line() const { return line_; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, line_, at.column);
  }

private:
  void advance() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r'))
      ++pos_;
    current_ = Token{};
    current_.column = column_base_ + static_cast<int>(pos_);
    if (pos_ >= src_.size()) {
      current_.type = Token::Type::End;
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '+': current_.type = Token::Type::Plus; ++pos_; return;
      case '-': current_.type = Token::Type::Minus; ++pos_; return;
      case '*': current_.type = Token::Type::Star; ++pos_; return;
      case '/': current_.type = Token::Type::Slash; ++pos_; return;
      case '^': current_.type = Token::Type::Caret; ++pos_; return;
      case '(': current_.type = Token::Type::LParen; ++pos_; return;
      case ')': current_.type = Token::Type::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        ++pos_;
      current_.type = Token::Type::Ident;
      current_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_,
                     current_.column);
  }

  void lex_number() {
    size_t start = pos_;
    bool seen_digit = false, seen_dot = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        seen_digit = true;
        ++pos_;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
        ++pos_;
      } else {
        break;
      }
    }
    if (!seen_digit)
      throw ParseError("malformed number", line_, current_.column);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t exp_start = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
        ++pos_;
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      } else {
        pos_ = exp_start;  // "2e" is the number 2 followed by ident "e"
      }
    }
    std::string_view lit = src_.substr(start, pos_ - start);
    double value = 0.0;
    auto [p, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), value);
    if (ec != std::errc() || p != lit.data() + lit.size())
      throw ParseError("malformed number '" + std::string(lit) + "'", line_,
                       current_.column);
    current_.type = Token::Type::Number;
    current_.number = value;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_;
  int column_base_;
  Token current_;
};

class Parser {
public:
  Parser(std::string_view text, std::span<const std::string> coords, int line,
         int column_base)
      : lex_(text, line, column_base), coords_(coords) {}

  ExprPtr parse() {
    ExprPtr e = parse_sum();
    if (lex_.peek().type != Token::Type::End)
      lex_.fail("unexpected trailing input", lex_.peek());
    return e;
  }

private:
  ExprPtr parse_sum() {
    ExprPtr e = parse_term();
    while (true) {
      auto t = lex_.peek().type;
      if (t == Token::Type::Plus) {
        lex_.take();
        e = make_bin(BinOp::Add, e, parse_term());
      } else if (t == Token::Type::Minus) {
        lex_.take();
        e = make_bin(BinOp::Sub, e, parse_term());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (true) {
      auto t = lex_.peek().type;
      if (t == Token::Type::Star) {
        lex_.take();
        e = make_bin(BinOp::Mul, e, parse_factor());
      } else if (t == Token::Type::Slash) {
        lex_.take();
        e = make_bin(BinOp::Div, e, parse_factor());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_factor() {
    if (lex_.peek().type == Token::Type::Minus) {
      lex_.take();
      ExprPtr operand = parse_factor();
      // Fold a negated literal so that "-3" round-trips as a literal.
      if (operand->kind == Expr::Kind::Number)
        return make_number(-operand->number);
      return make_neg(operand);
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (lex_.peek().type == Token::Type::Caret) {
      lex_.take();
      return make_bin(BinOp::Pow, base, parse_factor());
    }
    return base;
  }

  ExprPtr parse_atom() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::Type::Number:
        return make_number(t.number);
      case Token::Type::LParen: {
        ExprPtr e = parse_sum();
        Token close = lex_.take();
        if (close.type != Token::Type::RParen)
          lex_.fail("expected ')'", close);
        return e;
      }
      case Token::Type::Ident: {
        if (lex_.peek().type == Token::Type::LParen) {
          auto fn = lookup_fn(t.text);
          if (!fn) lex_.fail("unknown function '" + t.text + "'", t);
          lex_.take();  // '('
          ExprPtr arg = parse_sum();
          Token close = lex_.take();
          if (close.type != Token::Type::RParen)
            lex_.fail("expected ')' to close call of '" + t.text + "'", close);
          return make_call(*fn, arg);
        }
        for (size_t i = 0; i < coords_.size(); ++i)
          if (coords_[i] == t.text)
            return make_var(static_cast<int>(i), t.text);
        lex_.fail("unknown identifier '" + t.text + "'", t);
      }
      default:
        lex_.fail("expected expression", t);
    }
  }

  Lexer lex_;
  std::span<const std::string> coords_;
};

}  // namespace

ExprPtr parse_expression(std::string_view text,
                         std::span<const std::string> coords, int line,
                         int column_base) {
  return Parser(text, coords, line, column_base).parse();
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

std::string format_double(double v) {
  std::array<char, 32> buf;
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

namespace {

// Precedences: sum 1, product 2, unary minus 3, power 4, atoms 5.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      // Negative literals (including -0) print as "-c" and bind like a
      // unary minus.
      return std::signbit(e.number) ? 3 : 5;
    case Expr::Kind::Var:
    case Expr::Kind::Call:
      return 5;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Bin:
      switch (e.op) {
        case BinOp::Add:
        case BinOp::Sub: return 1;
        case BinOp::Mul:
        case BinOp::Div: return 2;
        case BinOp::Pow: return 4;
      }
  }
  return 5;
}

void print_rec(std::string& out, const Expr& e, int min_prec) {
  const bool parens = precedence(e) < min_prec;
  if (parens) out += '(';
  switch (e.kind) {
    case Expr::Kind::Number:
      out += format_double(e.number);
      break;
    case Expr::Kind::Var:
      out += e.name;
      break;
    case Expr::Kind::Neg:
      out += '-';
      print_rec(out, *e.lhs, 3);
      break;
    case Expr::Kind::Call:
      out += fn_name(e.fn);
      out += '(';
      print_rec(out, *e.lhs, 0);
      out += ')';
      break;
    case Expr::Kind::Bin: {
      const char* sym = "";
      int lp = 0, rp = 0;
      switch (e.op) {
        case BinOp::Add: sym = "+"; lp = 1; rp = 2; break;
        case BinOp::Sub: sym = "-"; lp = 1; rp = 2; break;
        case BinOp::Mul: sym = "*"; lp = 2; rp = 3; break;
        case BinOp::Div: sym = "/"; lp = 2; rp = 3; break;
        case BinOp::Pow: sym = "^"; lp = 5; rp = 3; break;
      }
      print_rec(out, *e.lhs, lp);
      out += sym;
      print_rec(out, *e.rhs, rp);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_expression(const Expr& e) {
  std::string out;
  print_rec(out, e, 0);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Number:
      return a.number == b.number;
    case Expr::Kind::Var:
      return a.var == b.var && a.name == b.name;
    case Expr::Kind::Neg:
      return structurally_equal(*a.lhs, *b.lhs);
    case Expr::Kind::Call:
      return a.fn == b.fn && structurally_equal(*a.lhs, *b.lhs);
    case Expr::Kind::Bin:
      return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void eval_fail(const std::string& what, const Expr& e) {
  throw EvalError(what + " in '" + print_expression(e) + "'");
}

double check_finite(double v, const Expr& e) {
  if (!std::isfinite(v)) eval_fail("non-finite result", e);
  return v;
}

}  // namespace

double eval_value(const Expr& e, std::span<const double> point) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.number;
    case Expr::Kind::Var:
      if (e.var < 0 || static_cast<size_t>(e.var) >= point.size())
        eval_fail("coordinate index out of range", e);
      return point[e.var];
    case Expr::Kind::Neg:
      return -eval_value(*e.lhs, point);
    case Expr::Kind::Call: {
      double a = eval_value(*e.lhs, point);
      switch (e.fn) {
        case Fn::Sin: return check_finite(std::sin(a), e);
        case Fn::Cos: return check_finite(std::cos(a), e);
        case Fn::Tan: return check_finite(std::tan(a), e);
        case Fn::Sinh: return check_finite(std::sinh(a), e);
        case Fn::Cosh: return check_finite(std::cosh(a), e);
        case Fn::Tanh: return check_finite(std::tanh(a), e);
        case Fn::Exp: return check_finite(std::exp(a), e);
        case Fn::Log:
          if (a <= 0.0) eval_fail("log of non-positive value", e);
          return check_finite(std::log(a), e);
        case Fn::Sqrt:
          if (a < 0.0) eval_fail("sqrt of negative value", e);
          return check_finite(std::sqrt(a), e);
      }
      eval_fail("unknown function", e);
    }
    case Expr::Kind::Bin: {
      double a = eval_value(*e.lhs, point);
      double b = eval_value(*e.rhs, point);
      switch (e.op) {
        case BinOp::Add: return check_finite(a + b, e);
        case BinOp::Sub: return check_finite(a - b, e);
        case BinOp::Mul: return check_finite(a * b, e);
        case BinOp::Div:
          if (b == 0.0) eval_fail("division by zero", e);
          return check_finite(a / b, e);
        case BinOp::Pow: {
          if (b == std::nearbyint(b) && std::abs(b) <= 1024.0)
            return check_finite(std::pow(a, b), e);
          if (a <= 0.0)
            eval_fail("non-integer power of a non-positive base", e);
          return check_finite(std::pow(a, b), e);
        }
      }
      eval_fail("unknown operator", e);
    }
  }
  eval_fail("malformed expression node", e);
}

ExprPtr substitute(const ExprPtr& e, std::span<const ExprPtr> replacements) {
  switch (e->kind) {
    case Expr::Kind::Number:
      return e;
    case Expr::Kind::Var:
      if (e->var < 0 || static_cast<size_t>(e->var) >= replacements.size())
        throw std::invalid_argument("substitute: no replacement for variable " +
                                    e->name);
      return replacements[e->var];
    case Expr::Kind::Neg:
      return make_neg(substitute(e->lhs, replacements));
    case Expr::Kind::Call:
      return make_call(e->fn, substitute(e->lhs, replacements));
    case Expr::Kind::Bin:
      return make_bin(e->op, substitute(e->lhs, replacements),
                      substitute(e->rhs, replacements));
  }
  throw std::logic_error("substitute: malformed expression node");
}

}  // namespace qcurv
