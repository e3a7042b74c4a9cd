#pragma once

// Weil algebras W(g) = Λg* ⊗ Sg* of products of gl-type factors, their
// truncations by symmetric degree, basic subcomplexes relative to compact
// subalgebras, invariant polynomials and the E2 page of the filtration.

#include <optional>
#include <string>
#include <vector>

#include "gfc/gca.hpp"
#include "gfc/lie_algebra.hpp"
#include "gfc/linalg.hpp"

namespace gfc::weil {

enum class FactorKind { GlReal, GlComplex, Bgl, OReal, U };

std::string to_string(FactorKind k);

struct LieFactor {
  FactorKind kind;
  std::size_t n;
  lie::LieAlgebra algebra;

  std::string label() const;
};

LieFactor make_factor(FactorKind kind, std::size_t n);

/// Ordered direct sum of factors; the bracket is block diagonal.
class LieProduct {
 public:
  explicit LieProduct(std::vector<LieFactor> factors);

  const std::vector<LieFactor>& factors() const { return factors_; }
  const lie::LieAlgebra& algebra() const { return algebra_; }
  std::size_t dim() const { return algebra_.dim(); }
  std::size_t offset(std::size_t factor) const { return offsets_.at(factor); }
  std::string label() const;

 private:
  std::vector<LieFactor> factors_;
  std::vector<std::size_t> offsets_;
  lie::LieAlgebra algebra_;
};

enum class SubalgebraKind { None, Compact, Full };

/// Per factor: nothing, the compact form (o(n) in gl_real(n), u(m) in bgl(m)), or the whole factor.
struct SubalgebraSpec {
  std::vector<SubalgebraKind> per_factor;
  /// Also take fixed points of conjugation by diag(-1, 1, ..., 1) on every o(n) in gl_real(n).
  bool component_group = false;
};

/// Generators y_a (degree 1, weight 0) and c_a (degree 2, weight 2) for each basis covector, with
///   d y_a = c_a + 1/2 sum_{b,c} C^a_{bc} y_b y_c,   d c_a = sum_{b,c} C^a_{bc} y_b c_c.
/// The truncation bound must be even.
gca::FreeGCA weil_algebra(const lie::LieAlgebra& g, std::optional<int> truncation_bound);
gca::FreeGCA weil_algebra(const LieProduct& g, std::optional<int> truncation_bound);

/// Compares the generator-defined d with the three-sum formula for d_W on every monomial of degree
/// <= maxDegree and every basis argument tuple. Returns the number of evaluations compared; throws
/// InvariantViolation on the first mismatch.
std::size_t verify_weil_differential(const lie::LieAlgebra& g, int max_degree);

/// Value of x in Λ^i ⊗ S^j at basis vectors: determinant convention on the wedge slots, permanent on the
/// symmetric slots.
Rational evaluate(const gca::FreeGCA& w, const gca::Element& x, const std::vector<std::size_t>& wedge_args,
                  const std::vector<std::size_t>& sym_args);

struct RelativeWeil {
  lie::LieAlgebra adapted;  // g in a basis whose first k_dim vectors span k
  std::size_t k_dim = 0;
  gca::FreeGCA algebra;     // Weil algebra of `adapted`
  gca::Subcomplex complex;  // basic elements in degrees 0..maxDegree+1
};

/// Basic subcomplex of the truncated Weil algebra: k-horizontal, k-invariant and fixed by each automorphism
/// (given as matrices on g in the original basis, acting on column vectors).
RelativeWeil relative_weil(const lie::LieAlgebra& g, const std::vector<linalg::SparseVector>& k_span,
                           const std::vector<std::vector<linalg::Vector>>& automorphisms,
                           std::optional<int> truncation_bound, int max_degree, unsigned jobs = 1);
RelativeWeil relative_weil(const LieProduct& g, const SubalgebraSpec& k, std::optional<int> truncation_bound,
                           int max_degree, unsigned jobs = 1);

/// Betti numbers of the basic subcomplex, degrees 0..maxDegree (maxDegree+1 unknown).
linalg::BettiTable relative_cohomology(const RelativeWeil& r, bool with_representatives = false,
                                       unsigned jobs = 1);

/// Largest symmetric-power monomial count accepted by invariant_polynomials.
inline constexpr std::size_t kMaxInvariantMonomials = 60000;

/// Basis of (S^s g*)^g for s = 0..maxSymDegree, each as an Element of weil_algebra(g, unbounded).
std::vector<std::vector<gca::Element>> invariant_polynomials(const lie::LieAlgebra& g, int max_sym_degree);
std::vector<std::size_t> invariant_polynomial_dims(const lie::LieAlgebra& g, int max_sym_degree);

struct E2Page {
  int truncation_bound = 0;  // -1 when unbounded
  int max_degree = 0;
  /// entries[p][q] for p = 0..maxP, q = 0..dim g
  std::vector<std::vector<std::size_t>> entries;
  /// Sum over p + q = n, n = 0..maxDegree
  std::vector<std::size_t> totals;
};

/// E2^{p,q} = H^q(g) ⊗ (S^{p/2} g*)^g for even p within the bound, 0 otherwise.
E2Page e2_page(const lie::LieAlgebra& g, std::optional<int> truncation_bound, int max_degree);

/// Product of the partition-counting series for the factor kinds; used for the bgl Hilbert series check.
std::vector<std::size_t> polynomial_ring_hilbert_series(const std::vector<int>& generator_degrees, int max_degree);

}  // namespace gfc::weil
