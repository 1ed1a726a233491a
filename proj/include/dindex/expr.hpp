#ifndef DINDEX_EXPR_HPP
#define DINDEX_EXPR_HPP

#include "dindex/poly.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

// Shared expression grammar for field elements and difference polynomials:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' nat)?
//   atom   := rational | name | name '@' nat | '(' expr ')'
//
// rational is `int` or `int/nat` written without spaces. Whether '/' is
// legal depends on the context the tree is evaluated in.

namespace dindex::expr {

enum class Kind { Number, Name, Add, Sub, Mul, Div, Neg, Pow };

struct Node {
  Kind kind;
  std::size_t pos = 0;
  Rational value;                // Number
  std::string name;              // Name
  std::optional<unsigned> order; // Name written as name@k
  unsigned exponent = 0;         // Pow
  std::unique_ptr<Node> lhs;     // unary operand or left operand
  std::unique_ptr<Node> rhs;
};

using NodePtr = std::unique_ptr<Node>;

/// Throws Error(SyntaxError | NegativeExponent | DivisionByZero) with the
/// character offset of the problem in the message.
NodePtr parse(const std::string& text);

}  // namespace dindex::expr

#endif  // DINDEX_EXPR_HPP
