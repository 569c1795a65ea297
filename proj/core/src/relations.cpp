#include "pluriminimal/relations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/sampling.hpp"

namespace pluri {
namespace {

using Exponent = Polynomial::Exponent;

void exponents_of_degree(int m, int d, std::vector<Exponent>& out) {
  Exponent e(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == m - 1) {
      e[static_cast<std::size_t>(j)] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(j)] = k;
      rec(j + 1, left - k);
    }
  };
  rec(0, d);
}

int degree_of(const Exponent& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

HoloExpr linear_combination(const PolyBasis& basis, const std::vector<std::complex<double>>& coeffs) {
  std::vector<HoloExpr> terms;
  for (std::size_t a = 0; a < basis.dimension(); ++a) {
    if (coeffs[a] == std::complex<double>(0.0, 0.0)) continue;
    terms.push_back(HoloExpr::constant(basis.m, coeffs[a]) * monomial(basis.monomials[a]));
  }
  if (terms.empty()) return HoloExpr::constant(basis.m, ComplexRational(0));
  return HoloExpr::sum(std::move(terms));
}

}  // namespace

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

PolyBasis PolyBasis::make(int m, int n) {
  if (m < 1 || n < 1) throw InvalidArgument("PolyBasis: m and n must be positive");
  PolyBasis b;
  b.m = m;
  b.n = n;
  for (int d = 1; d <= n; ++d) exponents_of_degree(m, d, b.monomials);
  return b;
}

std::size_t PolyBasis::expected_dimension(int m, int n) {
  return binomial(static_cast<std::size_t>(n + m), static_cast<std::size_t>(m)) - 1;
}

std::optional<std::size_t> PolyBasis::index_of(const Exponent& alpha) const {
  const auto it = std::find(monomials.begin(), monomials.end(), alpha);
  if (it == monomials.end()) return std::nullopt;
  return static_cast<std::size_t>(it - monomials.begin());
}

SymTensorSpace SymTensorSpace::make(int m, int degree_bound) {
  SymTensorSpace s;
  s.m = m;
  s.degree_bound = degree_bound;
  for (int d = 0; d <= degree_bound; ++d) exponents_of_degree(m, d, s.monomials);
  for (std::size_t i = 0; i < s.monomials.size(); ++i) s.lookup.emplace(s.monomials[i], i);
  return s;
}

std::size_t SymTensorSpace::expected_dimension(int m, int degree_bound) {
  const auto mm = static_cast<std::size_t>(m);
  return mm * (mm + 1) / 2 * binomial(static_cast<std::size_t>(degree_bound) + mm, mm);
}

std::size_t SymTensorSpace::dimension() const {
  return monomials.size() * sym2_dimension(static_cast<std::size_t>(m));
}

std::size_t SymTensorSpace::row(const Exponent& alpha, int j, int k) const {
  if (j > k) std::swap(j, k);
  const auto it = lookup.find(alpha);
  if (it == lookup.end()) throw InvalidArgument("SymTensorSpace: monomial out of range");
  return it->second * sym2_dimension(static_cast<std::size_t>(m)) +
         pair_index(static_cast<std::size_t>(j), static_cast<std::size_t>(k), static_cast<std::size_t>(m));
}

std::size_t pair_index(std::size_t a, std::size_t b, std::size_t d) {
  if (a > b) std::swap(a, b);
  return a * d - a * (a - 1) / 2 + (b - a);
}

MuMatrix build_mu(const PolyBasis& basis, std::size_t size_cap) {
  const std::size_t d = basis.dimension();
  const std::size_t cols = sym2_dimension(d);
  if (cols > size_cap) {
    throw SizeGuardError("dim Sym^2 V = " + std::to_string(cols) + " exceeds the cap " +
                         std::to_string(size_cap));
  }
  MuMatrix mu{basis, SymTensorSpace::make(basis.m, 2 * basis.n - 2), IntMatrix()};
  mu.matrix = IntMatrix(mu.target.dimension(), cols);
  const int m = basis.m;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      const Exponent& alpha = basis.monomials[a];
      const Exponent& beta = basis.monomials[b];
      const std::size_t col = pair_index(a, b, d);
      // Adds (d_k z^alpha)(d_l z^beta) to the dz_k dz_l entry.
      auto add = [&](int k, int l) {
        const int ak = alpha[static_cast<std::size_t>(k)];
        const int bl = beta[static_cast<std::size_t>(l)];
        if (ak == 0 || bl == 0) return;
        Exponent e(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) e[static_cast<std::size_t>(j)] = alpha[static_cast<std::size_t>(j)] + beta[static_cast<std::size_t>(j)];
        --e[static_cast<std::size_t>(k)];
        --e[static_cast<std::size_t>(l)];
        mu.matrix(mu.target.row(e, k, l), col) += ak * bl;
      };
      for (int k = 0; k < m; ++k) {
        add(k, k);
        for (int l = k + 1; l < m; ++l) {
          add(k, l);
          add(l, k);
        }
      }
    }
  }
  return mu;
}

QuadraticRelation QuadraticRelation::from_pair_coefficients(const PolyBasis& basis,
                                                            const ComplexRationalVector& c) {
  const std::size_t d = basis.dimension();
  if (c.size() != sym2_dimension(d)) throw InvalidArgument("relation: wrong number of coefficients");
  QuadraticRelation r{basis, std::vector<ComplexRationalVector>(d, ComplexRationalVector(d))};
  const ComplexRational half(mpq_class(1, 2));
  for (std::size_t a = 0; a < d; ++a) {
    r.gamma[a][a] = c[pair_index(a, a, d)];
    for (std::size_t b = a + 1; b < d; ++b) {
      r.gamma[a][b] = r.gamma[b][a] = half * c[pair_index(a, b, d)];
    }
  }
  return r;
}

QuadraticRelation QuadraticRelation::from_pair_coefficients(const PolyBasis& basis, const IntVector& c) {
  ComplexRationalVector v;
  v.reserve(c.size());
  for (const auto& x : c) v.emplace_back(mpq_class(x));
  return from_pair_coefficients(basis, v);
}

ComplexRationalVector QuadraticRelation::pair_coefficients() const {
  const std::size_t d = gamma.size();
  ComplexRationalVector c(sym2_dimension(d));
  for (std::size_t a = 0; a < d; ++a) {
    c[pair_index(a, a, d)] = gamma[a][a];
    for (std::size_t b = a + 1; b < d; ++b) c[pair_index(a, b, d)] = ComplexRational(2) * gamma[a][b];
  }
  return c;
}

bool QuadraticRelation::is_symmetric() const {
  for (std::size_t a = 0; a < gamma.size(); ++a) {
    if (gamma[a].size() != gamma.size()) return false;
    for (std::size_t b = a + 1; b < gamma.size(); ++b) {
      if (!(gamma[a][b] == gamma[b][a])) return false;
    }
  }
  return true;
}

bool QuadraticRelation::is_zero() const {
  for (const auto& row : gamma) {
    for (const auto& x : row) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

KernelResult kernel(const MuMatrix& mu) {
  KernelResult r;
  r.basis = integer_nullspace(mu.matrix);
  r.rank = mu.matrix.cols() - r.basis.size();
  for (const auto& v : r.basis) r.relations.push_back(QuadraticRelation::from_pair_coefficients(mu.basis, v));
  return r;
}

bool in_kernel(const MuMatrix& mu, const ComplexRationalVector& pair_coefficients) {
  for (const auto& x : multiply(mu.matrix, pair_coefficients)) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool in_span(const std::vector<IntVector>& basis, const ComplexRationalVector& v) {
  std::vector<ComplexRationalVector> rows;
  for (const auto& b : basis) {
    ComplexRationalVector row;
    for (const auto& x : b) row.emplace_back(mpq_class(x));
    rows.push_back(std::move(row));
  }
  const std::size_t before = rank(rows);
  rows.push_back(v);
  return rank(std::move(rows)) == before;
}

ComplexRationalVector relation_vector(const PolyBasis& basis, std::span<const RelationTerm> terms) {
  const std::size_t d = basis.dimension();
  ComplexRationalVector c(sym2_dimension(d));
  auto index = [&](const Exponent& e) {
    const auto i = basis.index_of(e);
    if (!i) throw InvalidArgument("relation_vector: polynomial degree exceeds the basis");
    return *i;
  };
  for (const auto& t : terms) {
    if (t.a.arity() != basis.m || t.b.arity() != basis.m) {
      throw InvalidArgument("relation_vector: arity mismatch");
    }
    for (const auto& [alpha, ca] : t.a.terms()) {
      if (degree_of(alpha) == 0) continue;
      const std::size_t ia = index(alpha);
      for (const auto& [beta, cb] : t.b.terms()) {
        if (degree_of(beta) == 0) continue;
        const std::size_t ib = index(beta);
        c[pair_index(ia, ib, d)] += t.weight * ca * cb;
      }
    }
  }
  return c;
}

ComplexRationalVector family_relation_vector(const PolyBasis& basis, const SixFunctions& six) {
  std::vector<Polynomial> p;
  for (const auto& e : six.p) {
    auto poly = Polynomial::from_expr(e);
    if (!poly) throw InvalidArgument("family_relation_vector: P_i is not an exact polynomial");
    p.push_back(std::move(*poly));
  }
  const RelationTerm terms[] = {{p[0], p[1], 1}, {p[2], p[3], -1}, {p[4], p[5], -1}};
  return relation_vector(basis, terms);
}

CongruenceDiagonalization congruence_diagonalize(const QuadraticRelation& relation) {
  if (!relation.is_symmetric()) throw InvalidArgument("congruence_diagonalize: gamma is not symmetric");
  auto s = relation.gamma;
  const std::size_t d = s.size();
  CongruenceDiagonalization out;
  auto subtract = [&](const ComplexRationalVector& u, const ComplexRationalVector& v, const ComplexRational& k) {
    for (std::size_t i = 0; i < d; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (!v[j].is_zero()) s[i][j] -= k * u[i] * v[j];
      }
    }
  };
  for (;;) {
    std::optional<std::size_t> p;
    for (std::size_t i = 0; i < d; ++i) {
      if (s[i][i].is_zero()) continue;
      if (!p || s[i][i].norm() > s[*p][*p].norm()) p = i;
    }
    if (p) {
      const ComplexRational pivot = s[*p][*p];
      const ComplexRationalVector row = s[*p];
      ComplexRationalVector w(d);
      const ComplexRational inv = pivot.inverse();
      for (std::size_t i = 0; i < d; ++i) w[i] = row[i] * inv;
      subtract(row, row, inv);
      out.d.push_back(pivot);
      out.w.push_back(std::move(w));
      continue;
    }
    std::optional<std::pair<std::size_t, std::size_t>> ab;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        if (s[i][j].is_zero()) continue;
        if (!ab || s[i][j].norm() > s[ab->first][ab->second].norm()) ab = {i, j};
      }
    }
    if (!ab) break;
    const ComplexRational sab = s[ab->first][ab->second];
    const ComplexRationalVector la = s[ab->first], lb = s[ab->second];
    const ComplexRational k = (ComplexRational(2) * sab).inverse();
    ComplexRationalVector plus(d), minus(d);
    for (std::size_t i = 0; i < d; ++i) {
      plus[i] = la[i] + lb[i];
      minus[i] = la[i] - lb[i];
    }
    const ComplexRational inv = sab.inverse();
    subtract(la, lb, inv);
    subtract(lb, la, inv);
    out.d.push_back(k);
    out.w.push_back(std::move(plus));
    out.d.push_back(-k);
    out.w.push_back(std::move(minus));
  }
  return out;
}

DiagonalizeResult diagonalize(const QuadraticRelation& relation, const DiagonalizeOptions& options) {
  if (!relation.is_symmetric()) throw InvalidArgument("diagonalize: gamma is not symmetric");
  const MuMatrix mu = build_mu(relation.basis);
  if (!in_kernel(mu, relation.pair_coefficients())) {
    throw InvalidArgument("diagonalize: relation is not in the kernel");
  }
  double scale = 0.0;
  for (const auto& row : relation.gamma) {
    for (const auto& x : row) scale = std::max(scale, std::abs(x.to_complex()));
  }
  DiagonalizeResult result;
  if (scale == 0.0) {
    result.certified = true;
    return result;
  }
  const CongruenceDiagonalization cd = congruence_diagonalize(relation);
  const std::size_t dim = relation.basis.dimension();
  for (std::size_t j = 0; j < cd.rank(); ++j) {
    const std::complex<double> root = std::sqrt(cd.d[j].to_complex() / scale);
    std::vector<std::complex<double>> coeffs(dim);
    for (std::size_t a = 0; a < dim; ++a) coeffs[a] = root * cd.w[j][a].to_complex();
    result.primitives.push_back(linear_combination(relation.basis, coeffs));
  }
  result.rank = cd.rank();
  const WeierstrassData data = WeierstrassData::from_primitives(result.primitives);
  for (const auto& z : polydisk_samples(relation.basis.m, options.radius, options.samples, options.seed)) {
    result.residual = std::max(result.residual, conformality(data, z).residual());
  }
  result.certified = result.residual <= options.tolerance;
  return result;
}

WeierstrassData emit_map(std::span<const HoloExpr> primitives, int m, const EmitOptions& options) {
  std::vector<HoloExpr> prims(primitives.begin(), primitives.end());
  for (const auto& p : prims) {
    if (p.arity() != m) throw InvalidArgument("emit_map: arity mismatch");
  }
  const auto points = polydisk_samples(m, options.radius, options.samples, options.seed);
  auto full_rank = [&](const std::vector<HoloExpr>& ps) {
    if (ps.empty()) return false;
    return check_rank(WeierstrassData::from_primitives(ps), points, options.rank_tolerance).passed;
  };
  if (options.ensure_immersion) {
    const HoloExpr i_unit = HoloExpr::constant(m, ComplexRational(0, 1));
    for (int j = 0; j < m && !full_rank(prims); ++j) {
      const HoloExpr z = HoloExpr::variable(m, j);
      prims.push_back(z);
      prims.push_back(i_unit * z);
    }
  }
  if (prims.empty()) throw InvalidArgument("emit_map: no primitives");
  return WeierstrassData::from_primitives(std::move(prims));
}

std::string DimensionReport::to_csv() const {
  std::ostringstream os;
  os << "n,dimV,dimSym2V,dimTarget,rank,kernel\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.dim_v << ',' << r.dim_sym2v << ',' << r.dim_target << ',' << r.rank << ','
       << r.kernel << '\n';
  }
  return os.str();
}

DimensionReport dimension_report(int m, int n_min, int n_max, std::size_t size_cap) {
  if (n_min < 1 || n_max < n_min) throw InvalidArgument("dimension_report: bad degree range");
  DimensionReport report;
  report.m = m;
  for (int n = n_min; n <= n_max; ++n) {
    const MuMatrix mu = build_mu(PolyBasis::make(m, n), size_cap);
    DimensionRow row;
    row.n = n;
    row.dim_v = mu.basis.dimension();
    row.dim_sym2v = mu.matrix.cols();
    row.dim_target = mu.target.dimension();
    row.rank = fraction_free_reduce(mu.matrix).rank();
    row.kernel = row.dim_sym2v - row.rank;
    if (row.kernel > 0 && !report.first_nontrivial) report.first_nontrivial = n;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace pluri
