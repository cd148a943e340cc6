#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "rbk/errors.hpp"

namespace rbk {

// Expression trees for user-supplied rate coefficients a(j,k).
//
// Grammar (whitespace-insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' number)?        '^' binds tightest, exponent is a
//                                       numeric literal applied to the left
//                                       operand only
//   base   := 'j' | 'k' | number | '(' expr ')'
//           | ('min'|'max') '(' expr ',' expr ')'
//   number := decimal digits with optional fraction, no exponent notation

class ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

class ExprNode {
public:
  enum class Op { add, sub, mul, div, pow, min, max, var_j, var_k, number };

  static ExprPtr number(double value);
  static ExprPtr variable(char name);  // 'j' or 'k'
  static ExprPtr binary(Op op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr power(ExprPtr base, double exponent);

  Op op() const { return op_; }
  double value() const { return value_; }  // literal or pow exponent
  const ExprPtr& lhs() const { return lhs_; }
  const ExprPtr& rhs() const { return rhs_; }

  double eval(double j, double k) const;

private:
  ExprNode(Op op, double value, ExprPtr lhs, ExprPtr rhs)
      : op_(op), value_(value), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  Op op_;
  double value_;
  ExprPtr lhs_, rhs_;
};

// Throws SyntaxError (with byte offset and expected-token description) or
// UnknownIdentifier for names other than j, k, min, max.
ExprPtr parse_expression(std::string_view source);

// Canonical fully-parenthesized form; re-parsing it yields an equivalent tree.
std::string to_string(const ExprNode& node);

}  // namespace rbk
