#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fraclift/series.hpp"

namespace fraclift {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression tree over literals, the variable x, + - * / ^, unary minus and
// the intrinsics exp, sin, cos.
struct Expr {
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  double number = 0.0; // Kind::Number
  std::string name;    // Kind::Call
  std::vector<ExprPtr> args;

  static ExprPtr make_number(double v);
  static ExprPtr make_variable();
  static ExprPtr make_unary(Kind k, ExprPtr operand);
  static ExprPtr make_binary(Kind k, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr make_call(std::string fn, ExprPtr arg);
};

// Deep structural equality; literals compare bit-for-bit.
bool operator==(const Expr& a, const Expr& b);

// Throws SyntaxError (with 1-based line and column) on malformed input or an
// unknown identifier.
ExprPtr parse(std::string_view text);

// Infix text that parses back to an identical tree.
std::string print(const Expr& e);

// Constructor-style dump, e.g. Add(Pow(x,2),Mul(3,x)).
std::string dump(const Expr& e);

// Pointwise value at x.
double evaluate(const Expr& e, double x);

// Truncated generalized power series about `basepoint`, keeping exponents
// <= order. Real powers are only accepted on (x - basepoint) or a positive
// multiple of it; anything else raises DomainError, mixed lattices raise
// LatticeError.
GenSeries to_series(const Expr& e, double basepoint, int order);

// Names accepted as intrinsic functions.
const std::vector<std::string>& intrinsic_names();

} // namespace fraclift
