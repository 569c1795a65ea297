#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pluriminimal/holo_expr.hpp"

namespace pluri {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

/// Value, gradient and Hessian of a holomorphic function at a point.
/// The Hessian is stored as its upper triangle, row major.
struct Jet2 {
  Complex value{};
  std::vector<Complex> grad;
  std::vector<Complex> hess_upper;

  Jet2() = default;
  explicit Jet2(int arity)
      : grad(static_cast<std::size_t>(arity)),
        hess_upper(static_cast<std::size_t>(arity * (arity + 1) / 2)) {}

  int arity() const { return static_cast<int>(grad.size()); }

  Complex hess(int j, int k) const { return hess_upper[index(j, k)]; }
  Complex& hess(int j, int k) { return hess_upper[index(j, k)]; }

 private:
  std::size_t index(int j, int k) const {
    if (j > k) std::swap(j, k);
    const int m = arity();
    return static_cast<std::size_t>(j * m - j * (j - 1) / 2 + (k - j));
  }
};

/// Forward propagation of second-order complex jets through the tree.
/// Throws NumericDomainError on a non-finite result, InvalidArgument on a size mismatch.
Jet2 eval_jet2(const HoloExpr& e, std::span<const Complex> z);

/// Value only, at the precision of T (double or long double).
template <class T>
std::complex<T> evaluate(const HoloExpr& e, std::span<const std::complex<T>> z);

inline Complex evaluate(const HoloExpr& e, const Point& z) {
  return evaluate<double>(e, std::span<const Complex>(z));
}

}  // namespace pluri
