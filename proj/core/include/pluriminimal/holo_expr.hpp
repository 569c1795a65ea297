/**
 * @file holo_expr.hpp
 * @brief Immutable expression trees for entire functions of m complex variables.
 *
 * Expressions are built from constants, variables z1..zm, sums, products,
 * non-negative integer powers, negation and exp/sin/cos. There is no division,
 * so every expression is entire. All constructors go through light constant
 * folding so that structurally equal inputs give structurally equal trees and
 * printing followed by parsing reproduces the same tree.
 *
 * Variables are 0-based in the API and 1-based in text ("z1" is index 0).
 */
#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pluriminimal/complex_rational.hpp"

namespace pluri {

/// A complex constant. Exact when it came from text or exact folding; a plain
/// double pair otherwise (e.g. coefficients produced by square roots).
struct Constant {
  std::complex<double> value;
  std::complex<long double> extended;  // value rounded to long double
  std::optional<ComplexRational> exact;

  static Constant from_exact(ComplexRational q);
  static Constant from_double(std::complex<double> v);

  bool is_exact() const { return exact.has_value(); }
  bool is_zero() const;
  bool is_one() const;
  bool is_minus_one() const;
};

Constant operator+(const Constant& a, const Constant& b);
Constant operator*(const Constant& a, const Constant& b);
Constant operator-(const Constant& a);
Constant pow(const Constant& a, int k);

class HoloExpr {
 public:
  enum class Kind { Constant, Variable, Sum, Product, Power, Negate, Exp, Sin, Cos };

  /// The zero function of the given arity.
  explicit HoloExpr(int arity = 1);

  static HoloExpr constant(int arity, Constant c);
  static HoloExpr constant(int arity, const ComplexRational& q) {
    return constant(arity, Constant::from_exact(q));
  }
  static HoloExpr constant(int arity, std::complex<double> v) {
    return constant(arity, Constant::from_double(v));
  }
  /// Throws InvalidArgument unless 0 <= index < arity.
  static HoloExpr variable(int arity, int index);

  static HoloExpr sum(std::vector<HoloExpr> terms);
  static HoloExpr product(std::vector<HoloExpr> factors);
  /// Throws InvalidArgument for a negative exponent.
  static HoloExpr power(const HoloExpr& base, int exponent);
  static HoloExpr negate(const HoloExpr& e);
  static HoloExpr apply(Kind function, const HoloExpr& argument);

  int arity() const noexcept { return arity_; }
  Kind kind() const noexcept;
  const Constant& constant_value() const;
  int variable_index() const;
  int exponent() const;
  const std::vector<HoloExpr>& children() const;

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_zero() const { return is_constant() && constant_value().is_zero(); }
  bool is_one() const { return is_constant() && constant_value().is_one(); }

  friend HoloExpr operator+(const HoloExpr& a, const HoloExpr& b) { return sum({a, b}); }
  friend HoloExpr operator-(const HoloExpr& a, const HoloExpr& b) { return sum({a, negate(b)}); }
  friend HoloExpr operator*(const HoloExpr& a, const HoloExpr& b) { return product({a, b}); }
  friend HoloExpr operator-(const HoloExpr& a) { return negate(a); }

 private:
  struct Node;
  HoloExpr(std::shared_ptr<const Node> node, int arity);

  std::shared_ptr<const Node> node_;
  int arity_;
};

HoloExpr exp(const HoloExpr& e);
HoloExpr sin(const HoloExpr& e);
HoloExpr cos(const HoloExpr& e);

/// Same shape, same constants (exact constants compare exactly, inexact ones bitwise).
bool structurally_equal(const HoloExpr& a, const HoloExpr& b);

/// Prints in the grammar accepted by parse_expr.
std::string to_string(const HoloExpr& e);

/// Parses an expression of the given arity.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | base ('^' uint)?
///   base   := 'z' uint | number | '(' expr ')' | func '(' expr ')'
///   func   := exp | sin | cos
///   decimal := digit+ ('.' digit+)? | '.' digit+
///   number := decimal | decimal 'i' | '(' decimal ('+'|'-') decimal 'i' ')'
///
/// Throws ParseError (syntax, negative exponent, variable out of range).
HoloExpr parse_expr(std::string_view text, int arity);

/// Symbolic partial derivative with respect to variable j (0-based).
HoloExpr differentiate(const HoloExpr& e, int j);

/// Replaces variable j by args[j]; the result has the arity of the arguments.
HoloExpr substitute(const HoloExpr& e, std::span<const HoloExpr> args);

/// Same function read with a different arity; every referenced variable must be < arity.
HoloExpr with_arity(const HoloExpr& e, int arity);

/// x^alpha as a product of powers; alpha.size() is the arity.
HoloExpr monomial(std::span<const int> alpha);

/// Largest polynomial degree, or nullopt when exp/sin/cos occurs.
std::optional<int> polynomial_degree(const HoloExpr& e);

}  // namespace pluri
