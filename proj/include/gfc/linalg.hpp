#pragma once

// Exact sparse linear algebra over the rationals: rank, kernels, echelon
// bases and the cohomology of finite cochain-complex slices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gfc/rational.hpp"

namespace gfc::linalg {

using Vector = std::vector<Rational>;

/// Sorted (index, value) pairs with no zero values.
using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

SparseVector to_sparse(const Vector& v);
Vector to_dense(const SparseVector& v, std::size_t dim);

/// a += factor * b
void axpy(SparseVector& a, const Rational& factor, const SparseVector& b);

struct Entry {
  std::size_t row;
  std::size_t col;
  Rational value;
};

/// Immutable sparse matrix; entries are sorted by (row, col), unique and nonzero.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  /// Duplicate positions are summed and zeros dropped; throws on out-of-range entries.
  static SparseMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<Entry> entries);
  static SparseMatrix from_dense(const std::vector<Vector>& rows);
  static SparseMatrix from_rows(std::size_t cols, const std::vector<SparseVector>& rows);
  /// Each column given as a sparse vector of length `rows`.
  static SparseMatrix from_columns(std::size_t rows, const std::vector<SparseVector>& columns);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Rational at(std::size_t row, std::size_t col) const;
  std::vector<SparseVector> row_vectors() const;
  std::vector<SparseVector> column_vectors() const;
  SparseMatrix transpose() const;
  Vector apply(const Vector& x) const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

/// Vertical concatenation; all blocks must share the column count.
SparseMatrix stack_rows(const std::vector<SparseMatrix>& blocks, std::size_t cols);

std::size_t rank(const SparseMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column of the reduced echelon form.
std::vector<Vector> kernel_basis(const SparseMatrix& m);
std::vector<SparseVector> kernel_basis_sparse(const SparseMatrix& m);

/// Reduced row echelon form of the span of `rows` (zero rows dropped), sorted by pivot.
std::vector<SparseVector> reduced_row_echelon(std::vector<SparseVector> rows);

/// Incrementally built echelon basis of a subspace of Q^dim.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : pivot_row_(dim, -1) {}

  /// Inserts v's remainder; returns false when v already lies in the span.
  bool insert(SparseVector v);
  bool contains(SparseVector v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return pivot_row_.size(); }

 private:
  /// Clears leading entries that have pivots; stops at the first leading entry without one.
  void reduce_leading(SparseVector& v) const;

  std::vector<SparseVector> rows_;
  std::vector<std::int64_t> pivot_row_;
};

/// Cohomology table: betti[q] == nullopt means "not determined by the computed window".
struct BettiTable {
  std::vector<std::optional<std::size_t>> betti;
  /// Per degree, a basis of representative cocycles (filled only on request).
  std::vector<std::vector<Vector>> representatives;

  std::size_t size() const { return betti.size(); }
  std::optional<std::size_t> at(std::size_t q) const { return q < betti.size() ? betti[q] : std::nullopt; }
  /// Known entries for degrees 0..n-1; throws if any is unknown.
  std::vector<std::size_t> known_prefix(std::size_t n) const;
};

/// Cochain complex in degrees 0..D with d_q : C^q -> C^{q+1} acting on column vectors.
class ChainComplexSlice {
 public:
  /// Validates shapes and d_{q+1} d_q = 0; throws InvariantViolation otherwise.
  ChainComplexSlice(std::vector<std::size_t> dims, std::vector<SparseMatrix> differentials);

  std::size_t top_degree() const { return dims_.size() - 1; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<SparseMatrix>& differentials() const { return differentials_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<SparseMatrix> differentials_;
};

/// betti[q] = dim ker d_q - rank d_{q-1} for q < D; betti[D] is unknown.
BettiTable cohomology_dims(const ChainComplexSlice& c, bool with_representatives = false, unsigned jobs = 1);

}  // namespace gfc::linalg
