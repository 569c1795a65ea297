/**
 * @file relations.hpp
 * @brief Quadratic relations among exact polynomial 1-forms on C^m.
 *
 * For projective space with a hyperplane section, sections of O(nH) are the
 * polynomials of degree <= n on the affine chart, so V = d(polynomials) has the
 * monomials of degree 1..n as a basis. The cup product on Sym^2 V lands in
 * polynomial symmetric 2-tensors of coefficient degree <= 2n - 2. Its kernel
 * consists of relations sum gamma_ab dF_a dF_b = 0; diagonalising gamma by
 * congruence gives forms dG_j with sum dG_j (x) dG_j = 0, i.e. Weierstrass data.
 *
 * Sym^2 V is coordinatised by unordered pairs a <= b with c_ab the coefficient of
 * dF_a.dF_b when the dz's commute; gamma_aa = c_aa and gamma_ab = c_ab / 2.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pluriminimal/exact_linalg.hpp"
#include "pluriminimal/family.hpp"
#include "pluriminimal/polynomial.hpp"
#include "pluriminimal/weierstrass.hpp"

namespace pluri {

inline constexpr std::size_t kDefaultSizeCap = 20000;

std::size_t binomial(std::size_t n, std::size_t k);

/// Monomials of total degree 1..n in m variables, graded, lexicographically
/// descending within a degree (z1 before z2).
struct PolyBasis {
  int m = 0;
  int n = 0;
  std::vector<Polynomial::Exponent> monomials;

  static PolyBasis make(int m, int n);
  /// C(n + m, m) - 1.
  static std::size_t expected_dimension(int m, int n);

  std::size_t dimension() const { return monomials.size(); }
  std::optional<std::size_t> index_of(const Polynomial::Exponent& alpha) const;
};

/// Polynomial symmetric 2-tensors sum T_jk(z) dz_j dz_k with deg T_jk <= bound.
struct SymTensorSpace {
  int m = 0;
  int degree_bound = 0;
  std::vector<Polynomial::Exponent> monomials;  // all of degree <= bound

  static SymTensorSpace make(int m, int degree_bound);
  /// (m(m+1)/2) * C(bound + m, m).
  static std::size_t expected_dimension(int m, int degree_bound);

  std::size_t dimension() const;
  /// Row of the symbol z^alpha dz_j dz_k; j and k may come in either order.
  std::size_t row(const Polynomial::Exponent& alpha, int j, int k) const;

  std::map<Polynomial::Exponent, std::size_t> lookup;
};

/// d (d + 1) / 2.
inline std::size_t sym2_dimension(std::size_t d) { return d * (d + 1) / 2; }
/// Column of the unordered pair (a, b) in Sym^2 coordinates.
std::size_t pair_index(std::size_t a, std::size_t b, std::size_t d);

struct MuMatrix {
  PolyBasis basis;
  SymTensorSpace target;
  IntMatrix matrix;  // target.dimension() x sym2_dimension(basis.dimension())
};

/// Throws SizeGuardError when dim Sym^2 V exceeds the cap.
MuMatrix build_mu(const PolyBasis& basis, std::size_t size_cap = kDefaultSizeCap);

/// Symmetric D x D matrix over Q[i].
struct QuadraticRelation {
  PolyBasis basis;
  std::vector<ComplexRationalVector> gamma;

  static QuadraticRelation from_pair_coefficients(const PolyBasis& basis,
                                                  const ComplexRationalVector& c);
  static QuadraticRelation from_pair_coefficients(const PolyBasis& basis, const IntVector& c);
  ComplexRationalVector pair_coefficients() const;
  bool is_symmetric() const;
  bool is_zero() const;
};

struct KernelResult {
  std::size_t rank = 0;
  std::vector<IntVector> basis;
  std::vector<QuadraticRelation> relations;

  std::size_t dimension() const { return basis.size(); }
};

KernelResult kernel(const MuMatrix& mu);

/// mu * c == 0 exactly.
bool in_kernel(const MuMatrix& mu, const ComplexRationalVector& pair_coefficients);
/// v lies in the Q[i]-span of the basis vectors.
bool in_span(const std::vector<IntVector>& basis, const ComplexRationalVector& v);

/// One weighted term weight * dA.dB of a relation.
struct RelationTerm {
  Polynomial a;
  Polynomial b;
  ComplexRational weight;
};

/// Pair coordinates of sum weight * dA.dB. Constant terms are dropped (d kills
/// them); throws InvalidArgument if a polynomial has degree > n.
ComplexRationalVector relation_vector(const PolyBasis& basis, std::span<const RelationTerm> terms);

/// dP1.dP2 - dP3.dP4 - dP5.dP6 for a family with polynomial f, g.
/// Throws InvalidArgument when some P_i is not an exact polynomial.
ComplexRationalVector family_relation_vector(const PolyBasis& basis, const SixFunctions& six);

/// gamma = sum_j d_j w_j w_j^t, exact.
struct CongruenceDiagonalization {
  std::vector<ComplexRational> d;
  std::vector<ComplexRationalVector> w;

  std::size_t rank() const { return d.size(); }
};

/// Symmetric pivoting on the largest diagonal entry; when the remaining diagonal
/// vanishes the hyperbolic pair (u + v, u - v) splits an off-diagonal entry.
CongruenceDiagonalization congruence_diagonalize(const QuadraticRelation& relation);

struct DiagonalizeOptions {
  double tolerance = 1e-10;
  std::size_t samples = 100;
  double radius = 1.0;
  std::uint64_t seed = 7;
};

struct DiagonalizeResult {
  std::vector<HoloExpr> primitives;  // F_1..F_k, floating coefficients
  std::size_t rank = 0;
  double residual = 0.0;  // max entry of sum dF_j.dF_j over the samples
  bool certified = false;
};

/// Throws InvalidArgument if gamma is not symmetric or not in the kernel.
/// Gamma is rescaled to unit max-modulus before square roots are taken.
DiagonalizeResult diagonalize(const QuadraticRelation& relation,
                              const DiagonalizeOptions& options = {});

struct EmitOptions {
  bool ensure_immersion = false;
  std::size_t samples = 100;
  double radius = 2.0;
  std::uint64_t seed = 11;
  double rank_tolerance = 1e-9;
};

/// phi = Re(F_1, ..., F_k). With ensure_immersion, the pairs (z_j, i z_j) are
/// appended for j = 1, 2, ... until the rank check passes on the samples.
WeierstrassData emit_map(std::span<const HoloExpr> primitives, int m,
                         const EmitOptions& options = {});

struct DimensionRow {
  int n = 0;
  std::size_t dim_v = 0;
  std::size_t dim_sym2v = 0;
  std::size_t dim_target = 0;
  std::size_t rank = 0;
  std::size_t kernel = 0;
};

struct DimensionReport {
  int m = 0;
  std::vector<DimensionRow> rows;
  std::optional<int> first_nontrivial;

  /// Header n,dimV,dimSym2V,dimTarget,rank,kernel.
  std::string to_csv() const;
};

DimensionReport dimension_report(int m, int n_min, int n_max,
                                 std::size_t size_cap = kDefaultSizeCap);

}  // namespace pluri
