#include "pluriminimal/exact_linalg.hpp"

#include <utility>

#include "pluriminimal/errors.hpp"

namespace pluri {
namespace {

void remove_content(IntMatrix& m, std::size_t r) {
  mpz_class g = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (sgn(m(r, c)) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m(r, c).get_mpz_t());
  }
  if (g > 1) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (sgn(m(r, c)) != 0) mpz_divexact(m(r, c).get_mpz_t(), m(r, c).get_mpz_t(), g.get_mpz_t());
    }
  }
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t c = 0; c < m.cols(); ++c) swap(m(a, c), m(b, c));
}

}  // namespace

EchelonForm fraction_free_reduce(IntMatrix m) {
  EchelonForm out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && sgn(m(pivot, c)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    swap_rows(m, r, pivot);
    remove_content(m, r);
    if (sgn(m(r, c)) < 0) {
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = -m(r, k);
    }
    const mpz_class p = m(r, c);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const mpz_class a = m(i, c);
      for (std::size_t k = 0; k < m.cols(); ++k) {
        if (sgn(m(r, k)) == 0) {
          if (sgn(m(i, k)) != 0) m(i, k) *= p;
        } else {
          m(i, k) = p * m(i, k) - a * m(r, k);
        }
      }
      remove_content(m, i);
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::vector<IntVector> integer_nullspace(const IntMatrix& m) {
  const EchelonForm e = fraction_free_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;

  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    mpz_class l = 1;
    for (std::size_t i = 0; i < e.rank(); ++i) {
      if (sgn(e.reduced(i, f)) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.reduced(i, e.pivot_columns[i]).get_mpz_t());
    }
    IntVector v(m.cols(), 0);
    v[f] = l;
    for (std::size_t i = 0; i < e.rank(); ++i) {
      const mpz_class& entry = e.reduced(i, f);
      if (sgn(entry) == 0) continue;
      const mpz_class& p = e.reduced(i, e.pivot_columns[i]);
      v[e.pivot_columns[i]] = -entry * (l / p);
    }
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    for (auto& x : v) x /= g;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(std::vector<ComplexRationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const ComplexRational inv = rows[r][c].inverse();
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      const ComplexRational factor = rows[i][c] * inv;
      for (std::size_t k = c; k < cols; ++k) {
        if (!rows[r][k].is_zero()) rows[i][k] -= factor * rows[r][k];
      }
    }
    ++r;
  }
  return r;
}

ComplexRationalVector multiply(const IntMatrix& m, const ComplexRationalVector& v) {
  if (v.size() != m.cols()) throw InvalidArgument("multiply: size mismatch");
  ComplexRationalVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpq_class re = 0, im = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (sgn(m(r, c)) == 0 || v[c].is_zero()) continue;
      re += m(r, c) * v[c].re();
      im += m(r, c) * v[c].im();
    }
    out[r] = ComplexRational(re, im);
  }
  return out;
}

}  // namespace pluri
