#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pluriminimal/complex_rational.hpp"
#include "pluriminimal/holo_expr.hpp"

namespace pluri {

/// Sparse multivariate polynomial with exact Q[i] coefficients.
class Polynomial {
 public:
  using Exponent = std::vector<int>;

  explicit Polynomial(int arity) : arity_(arity) {}

  /// Exact expansion of e; nullopt if e uses exp/sin/cos or inexact constants.
  static std::optional<Polynomial> from_expr(const HoloExpr& e);
  static Polynomial constant(int arity, const ComplexRational& c);
  static Polynomial variable(int arity, int j);

  int arity() const noexcept { return arity_; }
  const std::map<Exponent, ComplexRational>& terms() const noexcept { return terms_; }
  ComplexRational coefficient(const Exponent& alpha) const;
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }

  Polynomial derivative(int j) const;
  HoloExpr to_expr() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const ComplexRational& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const Exponent& alpha, const ComplexRational& c);

  int arity_;
  std::map<Exponent, ComplexRational> terms_;
};

Polynomial pow(const Polynomial& p, int k);

/// Expanded canonical form when e is an exact polynomial, e itself otherwise.
HoloExpr expand_if_polynomial(const HoloExpr& e);

}  // namespace pluri
