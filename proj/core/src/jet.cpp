#include "pluriminimal/jet.hpp"

#include <cmath>

#include "pluriminimal/errors.hpp"

namespace pluri {
namespace {

using Kind = HoloExpr::Kind;

template <class C>
C ipow(C base, int k) {
  C result(1);
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

void add_into(Jet2& acc, const Jet2& b) {
  acc.value += b.value;
  for (std::size_t j = 0; j < acc.grad.size(); ++j) acc.grad[j] += b.grad[j];
  for (std::size_t j = 0; j < acc.hess_upper.size(); ++j) acc.hess_upper[j] += b.hess_upper[j];
}

Jet2 multiply(const Jet2& a, const Jet2& b) {
  const int m = a.arity();
  Jet2 r(m);
  r.value = a.value * b.value;
  for (int j = 0; j < m; ++j) r.grad[j] = a.value * b.grad[j] + b.value * a.grad[j];
  for (int j = 0; j < m; ++j) {
    for (int k = j; k < m; ++k) {
      r.hess(j, k) = a.value * b.hess(j, k) + b.value * a.hess(j, k) + a.grad[j] * b.grad[k] +
                     a.grad[k] * b.grad[j];
    }
  }
  return r;
}

// phi(u) given phi(u0), phi'(u0), phi''(u0).
Jet2 chain(const Jet2& u, Complex phi, Complex d1, Complex d2) {
  const int m = u.arity();
  Jet2 r(m);
  r.value = phi;
  for (int j = 0; j < m; ++j) r.grad[j] = d1 * u.grad[j];
  for (int j = 0; j < m; ++j) {
    for (int k = j; k < m; ++k) r.hess(j, k) = d1 * u.hess(j, k) + d2 * u.grad[j] * u.grad[k];
  }
  return r;
}

Jet2 jet(const HoloExpr& e, std::span<const Complex> z) {
  const int m = e.arity();
  switch (e.kind()) {
    case Kind::Constant: {
      Jet2 r(m);
      r.value = e.constant_value().value;
      return r;
    }
    case Kind::Variable: {
      Jet2 r(m);
      r.value = z[static_cast<std::size_t>(e.variable_index())];
      r.grad[static_cast<std::size_t>(e.variable_index())] = 1.0;
      return r;
    }
    case Kind::Sum: {
      Jet2 r(m);
      for (const auto& t : e.children()) add_into(r, jet(t, z));
      return r;
    }
    case Kind::Product: {
      const auto& f = e.children();
      Jet2 r = jet(f.front(), z);
      for (std::size_t i = 1; i < f.size(); ++i) r = multiply(r, jet(f[i], z));
      return r;
    }
    case Kind::Power: {
      const Jet2 u = jet(e.children().front(), z);
      const int k = e.exponent();
      const Complex v = u.value;
      const Complex d1 = static_cast<double>(k) * ipow(v, k - 1);
      const Complex d2 = k >= 2 ? static_cast<double>(k) * (k - 1) * ipow(v, k - 2) : Complex(0.0);
      return chain(u, ipow(v, k), d1, d2);
    }
    case Kind::Negate: {
      Jet2 r = jet(e.children().front(), z);
      r.value = -r.value;
      for (auto& g : r.grad) g = -g;
      for (auto& h : r.hess_upper) h = -h;
      return r;
    }
    case Kind::Exp: {
      const Jet2 u = jet(e.children().front(), z);
      const Complex v = std::exp(u.value);
      return chain(u, v, v, v);
    }
    case Kind::Sin: {
      const Jet2 u = jet(e.children().front(), z);
      const Complex s = std::sin(u.value);
      return chain(u, s, std::cos(u.value), -s);
    }
    case Kind::Cos: {
      const Jet2 u = jet(e.children().front(), z);
      const Complex c = std::cos(u.value);
      return chain(u, c, -std::sin(u.value), -c);
    }
  }
  return Jet2(m);
}

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

template <class T>
std::complex<T> value(const HoloExpr& e, std::span<const std::complex<T>> z) {
  using C = std::complex<T>;
  switch (e.kind()) {
    case Kind::Constant: {
      const auto& c = e.constant_value();
      if constexpr (std::is_same_v<T, long double>) return c.extended;
      return C(static_cast<T>(c.value.real()), static_cast<T>(c.value.imag()));
    }
    case Kind::Variable:
      return z[static_cast<std::size_t>(e.variable_index())];
    case Kind::Sum: {
      C acc(0);
      for (const auto& t : e.children()) acc += value<T>(t, z);
      return acc;
    }
    case Kind::Product: {
      C acc(1);
      for (const auto& f : e.children()) acc *= value<T>(f, z);
      return acc;
    }
    case Kind::Power:
      return ipow(value<T>(e.children().front(), z), e.exponent());
    case Kind::Negate:
      return -value<T>(e.children().front(), z);
    case Kind::Exp:
      return std::exp(value<T>(e.children().front(), z));
    case Kind::Sin:
      return std::sin(value<T>(e.children().front(), z));
    case Kind::Cos:
      return std::cos(value<T>(e.children().front(), z));
  }
  return C(0);
}

}  // namespace

Jet2 eval_jet2(const HoloExpr& e, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != e.arity()) {
    throw InvalidArgument("eval_jet2: point has " + std::to_string(z.size()) +
                          " coordinates, expression arity is " + std::to_string(e.arity()));
  }
  for (const auto& c : z) {
    if (!finite(c)) throw NumericDomainError("eval_jet2: non-finite input point");
  }
  Jet2 r = jet(e, z);
  bool ok = finite(r.value);
  for (const auto& g : r.grad) ok = ok && finite(g);
  for (const auto& h : r.hess_upper) ok = ok && finite(h);
  if (!ok) throw NumericDomainError("eval_jet2: non-finite result for " + to_string(e));
  return r;
}

template <class T>
std::complex<T> evaluate(const HoloExpr& e, std::span<const std::complex<T>> z) {
  if (static_cast<int>(z.size()) != e.arity()) {
    throw InvalidArgument("evaluate: point has " + std::to_string(z.size()) +
                          " coordinates, expression arity is " + std::to_string(e.arity()));
  }
  std::complex<T> v = value<T>(e, z);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericDomainError("evaluate: non-finite result for " + to_string(e));
  }
  return v;
}

template std::complex<double> evaluate<double>(const HoloExpr&, std::span<const std::complex<double>>);
template std::complex<long double> evaluate<long double>(const HoloExpr&,
                                                         std::span<const std::complex<long double>>);

}  // namespace pluri
