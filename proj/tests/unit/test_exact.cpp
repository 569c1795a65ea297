#include <gtest/gtest.h>

#include <cstdint>
#include <random>

#include "pluriminimal/complex_rational.hpp"
#include "pluriminimal/exact_linalg.hpp"
#include "pluriminimal/polynomial.hpp"

namespace pluri {
namespace {

TEST(ComplexRational, FieldOperations) {
  const ComplexRational a(mpq_class(1, 2), mpq_class(3));
  const ComplexRational b(mpq_class(-2), mpq_class(1, 3));
  EXPECT_EQ(a * a.inverse(), ComplexRational(1));
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ(a * b, ComplexRational(mpq_class(-2), mpq_class(-35, 6)));
  EXPECT_EQ(a.norm(), mpq_class(37, 4));
  EXPECT_EQ(a.conj(), ComplexRational(mpq_class(1, 2), mpq_class(-3)));
}

TEST(ComplexRational, DecimalParsing) {
  EXPECT_EQ(*ComplexRational::parse_decimal("0.125"), mpq_class(1, 8));
  EXPECT_EQ(*ComplexRational::parse_decimal("12"), mpq_class(12));
  EXPECT_FALSE(ComplexRational::parse_decimal("1.2.3").has_value());
  EXPECT_TRUE(has_terminating_decimal(mpq_class(3, 40)));
  EXPECT_FALSE(has_terminating_decimal(mpq_class(1, 3)));
  EXPECT_EQ(decimal_string(mpq_class(-3, 40)), "0.075");
}

TEST(Polynomial, ExpandsExpressions) {
  const auto p = Polynomial::from_expr(parse_expr("(z1+z2)^2-z1*(z1+2*z2)", 2));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->terms().size(), 1u);
  EXPECT_EQ(p->coefficient({0, 2}), ComplexRational(1));
  EXPECT_EQ(p->degree(), 2);
  EXPECT_FALSE(Polynomial::from_expr(parse_expr("exp(z1)", 1)).has_value());
}

TEST(Polynomial, DerivativeAndProduct) {
  const Polynomial x = Polynomial::variable(2, 0);
  const Polynomial y = Polynomial::variable(2, 1);
  const Polynomial p = pow(x, 3) * y + ComplexRational(mpq_class(1, 2)) * y;
  EXPECT_EQ(p.derivative(0), ComplexRational(3) * pow(x, 2) * y);
  EXPECT_EQ(p.derivative(1), pow(x, 3) + Polynomial::constant(2, ComplexRational(mpq_class(1, 2))));
  const auto back = Polynomial::from_expr(p.to_expr());
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, p);
}

// Rank modulo a prime, an independent route to the rational rank.
std::size_t modular_rank(const IntMatrix& m, std::uint64_t prime) {
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
  const mpz_class p(std::to_string(prime));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_class v = m(r, c) % p;
      if (v < 0) v += p;
      a[r][c] = v.get_ui();
    }
  }
  auto mulmod = [prime](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % prime);
  };
  auto powmod = [&](std::uint64_t x, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, x);
      x = mulmod(x, x);
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = powmod(a[rank][c], prime - 2);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (a[r][c] == 0) continue;
      const std::uint64_t f = mulmod(a[r][c], inv);
      for (std::size_t k = c; k < m.cols(); ++k) {
        a[r][k] = (a[r][k] + prime - mulmod(f, a[rank][k])) % prime;
      }
    }
    ++rank;
  }
  return rank;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t rank) {
  std::uniform_int_distribution<int> d(-5, 5);
  IntMatrix left(rows, rank), right(rank, cols), out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < rank; ++k) left(i, k) = d(rng);
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t j = 0; j < cols; ++j) right(k, j) = d(rng);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < rank; ++k) out(i, j) += left(i, k) * right(k, j);
  return out;
}

TEST(FractionFree, RankMatchesModularOracle) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const std::size_t rows = 3 + t % 7, cols = 4 + t % 5, r = 1 + t % 4;
    const IntMatrix m = random_matrix(rng, rows, cols, std::min({r, rows, cols}));
    const std::size_t expected = std::max(modular_rank(m, 2305843009213693951ULL), modular_rank(m, 1000000007ULL));
    EXPECT_EQ(fraction_free_reduce(m).rank(), expected);
  }
}

TEST(FractionFree, PivotColumnsAreCleared) {
  std::mt19937_64 rng(4);
  const IntMatrix m = random_matrix(rng, 6, 8, 4);
  const EchelonForm e = fraction_free_reduce(m);
  for (std::size_t i = 0; i < e.rank(); ++i) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != i) {
        EXPECT_EQ(e.reduced(r, e.pivot_columns[i]), 0);
      }
    }
    EXPECT_GT(e.reduced(i, e.pivot_columns[i]), 0);
  }
}

TEST(Nullspace, VectorsAreExactAndPrimitive) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix m = random_matrix(rng, 5, 9, 1 + t % 5);
    const auto basis = integer_nullspace(m);
    EXPECT_EQ(basis.size() + fraction_free_reduce(m).rank(), m.cols());
    for (const auto& v : basis) {
      mpz_class g = 0;
      for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      EXPECT_EQ(g, 1);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class s = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
        EXPECT_EQ(s, 0);
      }
    }
    std::vector<ComplexRationalVector> rows;
    for (const auto& v : basis) {
      ComplexRationalVector row;
      for (const auto& x : v) row.emplace_back(mpq_class(x));
      rows.push_back(row);
    }
    EXPECT_EQ(rank(rows), basis.size());
  }
}

TEST(ExactLinalg, MultiplyOverGaussianRationals) {
  IntMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 1) = -3;
  const ComplexRationalVector v{ComplexRational(mpq_class(1, 2), mpq_class(1)), ComplexRational(0, 1)};
  const auto out = multiply(m, v);
  EXPECT_EQ(out[0], ComplexRational(mpq_class(1, 2), mpq_class(3)));
  EXPECT_EQ(out[1], ComplexRational(0, -3));
}

}  // namespace
}  // namespace pluri
