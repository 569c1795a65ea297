#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "pluriminimal/complex_rational.hpp"

namespace pluri {

using IntVector = std::vector<mpz_class>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Reduced echelon form obtained with integer row operations only: each
/// elimination step is row_i <- p * row_i - a * row_pivot, followed by removal
/// of the row content. Pivot columns are zero outside their pivot row.
struct EchelonForm {
  IntMatrix reduced;
  std::vector<std::size_t> pivot_columns;

  std::size_t rank() const { return pivot_columns.size(); }
};

/// Pivot search is first-nonzero in row order, so the result is deterministic.
EchelonForm fraction_free_reduce(IntMatrix m);

/// Primitive integer basis of the right nullspace, one vector per free column,
/// with the free coordinate positive.
std::vector<IntVector> integer_nullspace(const IntMatrix& m);

using ComplexRationalVector = std::vector<ComplexRational>;

/// Rank over Q[i] by Gaussian elimination on the rows.
std::size_t rank(std::vector<ComplexRationalVector> rows);

/// m * v over Q[i].
ComplexRationalVector multiply(const IntMatrix& m, const ComplexRationalVector& v);

}  // namespace pluri
