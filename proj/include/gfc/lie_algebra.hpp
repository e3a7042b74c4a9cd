#pragma once

// Lie algebras given by sparse rational structure constants on a basis
// whose elements carry integer weights. Finite-dimensional algebras use
// weight 0 throughout.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gfc/linalg.hpp"

namespace gfc::lie {

using linalg::SparseVector;
using linalg::Vector;

struct BasisElement {
  std::string symbol;
  int weight = 0;
};

class LieAlgebra {
 public:
  using BracketFn = std::function<SparseVector(std::size_t, std::size_t)>;

  /// Fills the table from `bracket` on i < j; checks antisymmetry against bracket(j, i), weight additivity
  /// and Jacobi. With `window` set, Jacobi is only checked on triples whose partial weight sums stay
  /// inside it (brackets landing above the window are truncated, so boundary triples are exempt).
  LieAlgebra(std::vector<BasisElement> basis, const BracketFn& bracket, std::optional<int> window = std::nullopt);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int weight(std::size_t i) const { return basis_[i].weight; }
  std::optional<int> window() const { return window_; }

  /// [e_i, e_j] as a sparse vector.
  const SparseVector& bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  SparseVector bracket(const SparseVector& x, const SparseVector& y) const;
  /// ad_x as a dim x dim matrix acting on column vectors.
  linalg::SparseMatrix ad(const SparseVector& x) const;

  bool is_abelian() const;
  /// dim of [g, g].
  std::size_t derived_dim() const;

 private:
  void check_jacobi() const;

  std::vector<BasisElement> basis_;
  std::vector<SparseVector> table_;
  std::optional<int> window_;
};

LieAlgebra abelian(std::size_t k);
/// gl_n with basis E_ij at index i*n + j.
LieAlgebra gl(std::size_t n);
/// gl_m(C) as a real Lie algebra: E_ij at i*m + j, then iE_ij at m*m + i*m + j.
LieAlgebra bgl(std::size_t m);
LieAlgebra direct_sum(const std::vector<LieAlgebra>& parts);

/// Spanning vectors of o(n) in gl(n): E_ij - E_ji for i < j.
std::vector<SparseVector> o_span(std::size_t n);
/// Spanning vectors of u(m) in bgl(m): E_ij - E_ji, i(E_ij + E_ji) for i < j, and iE_ii.
std::vector<SparseVector> u_span(std::size_t m);

/// Structure constants of the subalgebra with basis `span` (linearly independent, closed under bracket).
LieAlgebra subalgebra(const LieAlgebra& g, const std::vector<SparseVector>& span,
                      const std::vector<std::string>& symbols = {});

/// Coordinates of w in the basis `span`, or nullopt when w is outside their span.
std::optional<Vector> coordinates_in_span(const std::vector<SparseVector>& span, const SparseVector& w,
                                          std::size_t ambient_dim);

}  // namespace gfc::lie
