#include "pluriminimal/complex_rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pluri {

ComplexRational::ComplexRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

std::optional<mpq_class> ComplexRational::parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string digits;
  std::size_t fraction_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      return std::nullopt;
    }
  }
  if (!any_digit) return std::nullopt;
  mpz_class numerator(digits, 10);
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 10, fraction_digits);
  mpq_class q(numerator, denominator);
  q.canonicalize();
  return q;
}

ComplexRational ComplexRational::inverse() const {
  const mpq_class n = norm();
  if (sgn(n) == 0) throw std::domain_error("ComplexRational: inverse of zero");
  return {re_ / n, -im_ / n};
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

bool has_terminating_decimal(const mpq_class& q) {
  mpz_class d = q.get_den();
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) d /= 5;
  return d == 1;
}

std::string decimal_string(const mpq_class& q) {
  if (!has_terminating_decimal(q)) throw std::invalid_argument("decimal_string: non-terminating");
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  // Smallest k with den | 10^k.
  std::size_t k = 0;
  mpz_class scale = 1;
  while (!mpz_divisible_p(scale.get_mpz_t(), den.get_mpz_t())) {
    scale *= 10;
    ++k;
  }
  mpz_class scaled = num * (scale / den);
  std::string digits = scaled.get_str();
  if (k == 0) return digits;
  if (digits.size() <= k) digits.insert(0, k - digits.size() + 1, '0');
  digits.insert(digits.size() - k, ".");
  return digits;
}

}  // namespace pluri
