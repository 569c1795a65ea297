#include "pluriminimal/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "pluriminimal/errors.hpp"

namespace pluri {

Polynomial Polynomial::constant(int arity, const ComplexRational& c) {
  Polynomial p(arity);
  p.add_term(Exponent(static_cast<std::size_t>(arity), 0), c);
  return p;
}

Polynomial Polynomial::variable(int arity, int j) {
  Polynomial p(arity);
  Exponent alpha(static_cast<std::size_t>(arity), 0);
  alpha[static_cast<std::size_t>(j)] = 1;
  p.add_term(alpha, ComplexRational(1));
  return p;
}

void Polynomial::add_term(const Exponent& alpha, const ComplexRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ComplexRational Polynomial::coefficient(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? ComplexRational(0) : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [alpha, c] : terms_) d = std::max(d, std::accumulate(alpha.begin(), alpha.end(), 0));
  return d;
}

Polynomial Polynomial::derivative(int j) const {
  Polynomial r(arity_);
  for (const auto& [alpha, c] : terms_) {
    const int k = alpha[static_cast<std::size_t>(j)];
    if (k == 0) continue;
    Exponent beta = alpha;
    beta[static_cast<std::size_t>(j)] -= 1;
    r.add_term(beta, ComplexRational(k) * c);
  }
  return r;
}

HoloExpr Polynomial::to_expr() const {
  if (terms_.empty()) return HoloExpr(arity_);
  std::vector<HoloExpr> items;
  // Highest degree first reads naturally.
  std::vector<std::pair<Exponent, ComplexRational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  for (const auto& [alpha, c] : ordered) {
    items.push_back(HoloExpr::product({HoloExpr::constant(arity_, c), monomial(alpha)}));
  }
  return items.size() == 1 ? items.front() : HoloExpr::sum(std::move(items));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(a.arity_);
  for (const auto& [alpha, ca] : a.terms_) {
    for (const auto& [beta, cb] : b.terms_) {
      Polynomial::Exponent gamma(alpha.size());
      for (std::size_t j = 0; j < alpha.size(); ++j) gamma[j] = alpha[j] + beta[j];
      r.add_term(gamma, ca * cb);
    }
  }
  return r;
}

Polynomial operator*(const ComplexRational& c, const Polynomial& p) {
  Polynomial r(p.arity_);
  for (const auto& [alpha, coeff] : p.terms_) r.add_term(alpha, c * coeff);
  return r;
}

Polynomial pow(const Polynomial& p, int k) {
  Polynomial result = Polynomial::constant(p.arity(), ComplexRational(1));
  Polynomial base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

std::optional<Polynomial> Polynomial::from_expr(const HoloExpr& e) {
  using Kind = HoloExpr::Kind;
  const int m = e.arity();
  switch (e.kind()) {
    case Kind::Constant:
      if (!e.constant_value().is_exact()) return std::nullopt;
      return constant(m, *e.constant_value().exact);
    case Kind::Variable:
      return variable(m, e.variable_index());
    case Kind::Sum:
    case Kind::Product: {
      std::optional<Polynomial> acc;
      for (const auto& c : e.children()) {
        auto p = from_expr(c);
        if (!p) return std::nullopt;
        if (!acc) {
          acc = std::move(p);
        } else if (e.kind() == Kind::Sum) {
          *acc += *p;
        } else {
          acc = *acc * *p;
        }
      }
      return acc;
    }
    case Kind::Power: {
      auto p = from_expr(e.children().front());
      if (!p) return std::nullopt;
      return pow(*p, e.exponent());
    }
    case Kind::Negate: {
      auto p = from_expr(e.children().front());
      if (!p) return std::nullopt;
      return ComplexRational(-1) * *p;
    }
    default:
      return std::nullopt;
  }
}

HoloExpr expand_if_polynomial(const HoloExpr& e) {
  const auto p = Polynomial::from_expr(e);
  return p ? p->to_expr() : e;
}

}  // namespace pluri
