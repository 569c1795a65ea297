#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pluri {

/// Exact element of Q[i], stored as a pair of GMP rationals.
class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(mpq_class re, mpq_class im = 0);  // NOLINT: implicit from rationals
  ComplexRational(long re) : ComplexRational(mpq_class(re)) {}  // NOLINT
  ComplexRational(int re) : ComplexRational(mpq_class(re)) {}    // NOLINT

  /// Parses an unsigned decimal literal such as "12" or "0.125".
  static std::optional<mpq_class> parse_decimal(std::string_view text);

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  /// Squared modulus, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  ComplexRational conj() const { return {re_, -im_}; }
  /// Throws std::domain_error on zero.
  ComplexRational inverse() const;

  ComplexRational operator-() const { return {-re_, -im_}; }
  ComplexRational& operator+=(const ComplexRational& o);
  ComplexRational& operator-=(const ComplexRational& o);
  ComplexRational& operator*=(const ComplexRational& o);
  ComplexRational& operator/=(const ComplexRational& o) { return *this *= o.inverse(); }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// True when q has a finite decimal expansion (denominator of the form 2^a 5^b).
bool has_terminating_decimal(const mpq_class& q);

/// Exact decimal text of |q| ("3", "0.125"); requires has_terminating_decimal(q).
std::string decimal_string(const mpq_class& q);

}  // namespace pluri
