#pragma once

#include <stdexcept>
#include <string>

namespace qcurv {

/// Malformed input text: expression grammar, metric files, unknown names.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Expression evaluated outside its domain (log of a non-positive value,
/// division by zero, non-integer power of a non-positive base, overflow).
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerical precondition violated: non-positive-definite metric,
/// degenerate plane, eigensolver failure.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcurv
