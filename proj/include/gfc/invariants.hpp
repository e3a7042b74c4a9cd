#pragma once

// gl(V0) + gl(W) invariant forms on
//   Λ^{r+s} V0 ⊗ Λ^r (Sym²V0* ⊗ V0) ⊗ Λ^s (W ⊗ W* ⊗ V0*)
// built from permutations, the tilde/ev pair relating them to trace
// invariants of Sym^s(W ⊗ W*), and a brute-force invariant solve.

#include <cstddef>
#include <string>
#include <vector>

#include "gfc/linalg.hpp"
#include "gfc/rational.hpp"

namespace gfc::inv {

/// Permutation of {0..r-1}; images()[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t r);
  /// Canonical representative of a cycle type (parts in any order): consecutive cycles 0->1->..->k-1->0, ...
  static Permutation from_cycle_type(const std::vector<std::size_t>& parts);
  /// All of Σ_r in lexicographic order of images.
  static std::vector<Permutation> all(std::size_t r);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }

  Permutation inverse() const;
  /// (this ∘ other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
  /// beta ∘ this ∘ beta^{-1}
  Permutation conjugate_by(const Permutation& beta) const;
  /// this ⊔ other, with other acting on {size().. size()+other.size()-1}
  Permutation disjoint_union(const Permutation& other) const;

  int sign() const;
  /// Cycle lengths, descending.
  std::vector<std::size_t> cycle_type() const;
  /// Order of the centralizer, prod_k k^{m_k} m_k!
  std::size_t centralizer_order() const;
  bool conjugate_to(const Permutation& other) const { return cycle_type() == other.cycle_type(); }

  /// One-line notation with 1-based images, e.g. "[2,1,3]".
  std::string to_string() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> images_;
};

/// Partitions of n with every part <= max_part.
std::size_t partitions_bounded(std::size_t n, std::size_t max_part);

/// Alternating form of bidegree (r, s), stored by its values on sorted basis tuples. Basis orders:
///   V0: e_0..e_{n-1};
///   S = Sym²V0* ⊗ V0: index mono(a,b)*n + c, monomials a <= b in lexicographic order;
///   U = W ⊗ W* ⊗ V0*: index (w*dimW + w*)*n + v*.
/// The flat index is ((iV * |Λ^r S|) + iS) * |Λ^s U| + iU with lexicographic subset ranks.
class MultilinearForm {
 public:
  MultilinearForm(std::size_t dim_v0, std::size_t dim_w, std::size_t r, std::size_t s);

  std::size_t dim_v0() const { return dim_v0_; }
  std::size_t dim_w() const { return dim_w_; }
  std::size_t r() const { return r_; }
  std::size_t s() const { return s_; }
  std::size_t size() const { return coeffs_.size(); }
  std::size_t s_dim() const;  // dim S
  std::size_t u_dim() const;  // dim U

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational& at(std::size_t flat) { return coeffs_.at(flat); }
  const Rational& at(std::size_t flat) const { return coeffs_.at(flat); }

  /// Value on arbitrary basis arguments (reordered with the alternating sign; repeats give 0).
  Rational value(std::vector<std::size_t> v, std::vector<std::size_t> s_args, std::vector<std::size_t> u_args) const;

  bool is_zero() const;
  bool operator==(const MultilinearForm&) const = default;

  std::size_t s_index(std::size_t a, std::size_t b, std::size_t c) const;
  std::size_t u_index(std::size_t w, std::size_t w_star, std::size_t v_star) const;

  std::size_t flat(std::size_t iv, std::size_t is, std::size_t iu) const {
    return (iv * n_s_subsets_ + is) * n_u_subsets_ + iu;
  }

 private:
  std::size_t dim_v0_ = 0, dim_w_ = 0, r_ = 0, s_ = 0;
  std::size_t n_s_subsets_ = 0, n_u_subsets_ = 0;
  std::vector<Rational> coeffs_;
};

/// Shuffle product, with the alternating sign taken separately in each of the three families.
/// dimW may differ only when one factor has s = 0.
MultilinearForm multiply(const MultilinearForm& f, const MultilinearForm& g);

/// Φ_σ((v_i), (φ_i, v'_i)) = Σ_{ν,β} sgn ν Π φ_i(v'_{βσβ⁻¹(i)}, v_{ν(i)}), with the monomial e_a e_b read
/// as the bilinear form (u_a v_b + u_b v_a)/2.
MultilinearForm phi(const Permutation& sigma, std::size_t dim_v0, std::size_t dim_w = 0);

/// Element of (Sym^s(W ⊗ W*))*, by values on sorted multisets of pairs p = w*dimW + w*.
struct SymmetricForm {
  std::size_t dim_w = 0;
  std::size_t s = 0;
  std::vector<std::vector<std::size_t>> basis;  // sorted multisets, lexicographic
  std::vector<Rational> coeffs;

  bool operator==(const SymmetricForm&) const = default;
  bool is_zero() const;
};

SymmetricForm zero_symmetric(std::size_t dim_w, std::size_t s);
/// Ψ((w_i, w*_i)) = Σ_ω Π_j w*_j(w_{ωγω⁻¹(j)})
SymmetricForm psi_symmetric(const Permutation& gamma, std::size_t dim_w);
/// Normalized symmetric product: the sum over unsigned shuffles.
SymmetricForm multiply(const SymmetricForm& f, const SymmetricForm& g);

/// Ψ̃ = Ω_s · Ψ
MultilinearForm tilde(const SymmetricForm& psi, std::size_t dim_v0);
/// tilde(psi_symmetric(γ)); zero when s > dimV0.
MultilinearForm psi_tilde(const Permutation& gamma, std::size_t dim_v0, std::size_t dim_w);

/// ψ_{σ,γ}, computed as Φ_σ · Ψ̃_γ and checked entrywise against the signed triple sum over
/// Σ_{r+s} × Σ_r × Σ_s.
MultilinearForm psi_pair(const Permutation& sigma, const Permutation& gamma, std::size_t dim_v0, std::size_t dim_w);
/// The signed triple sum alone.
MultilinearForm psi_pair_direct(const Permutation& sigma, const Permutation& gamma, std::size_t dim_v0,
                                std::size_t dim_w);

/// Ψ ↦ f((e_{b_i}), (-, -, e*_{b_i})) on the partial basis b (default e_0..e_{s-1}). Throws InputError when
/// r != 0, s > dimV0, or f is not in the image of tilde.
SymmetricForm ev(const MultilinearForm& f);
SymmetricForm ev(const MultilinearForm& f, const std::vector<std::size_t>& partial_basis);

/// Representation of a Lie algebra given by one sparse matrix per basis element.
struct TensorModule {
  std::size_t dim = 0;
  std::vector<linalg::SparseMatrix> action;
};

/// gl(V0) ⊕ gl(W), basis E_ij of gl(V0) first.
TensorModule trivial_module(std::size_t generators);
TensorModule standard_module(std::size_t n, std::size_t offset, std::size_t generators);
TensorModule dual(const TensorModule& m);
TensorModule tensor(const TensorModule& a, const TensorModule& b);
TensorModule exterior_power(const TensorModule& m, std::size_t k);
TensorModule symmetric_power(const TensorModule& m, std::size_t k);
/// dim of the common kernel of all action matrices.
std::size_t invariant_dim(const TensorModule& m);

/// The module whose dual holds forms of bidegree (r, s); its basis order matches MultilinearForm.
TensorModule form_module(std::size_t r, std::size_t s, std::size_t dim_v0, std::size_t dim_w);

/// Largest tensor dimension accepted by inv_dim_bruteforce.
inline constexpr std::size_t kMaxTensorDim = 20000;

/// True when gl(V0) + gl(W) annihilates f.
bool is_invariant(const MultilinearForm& f);
std::size_t inv_dim_bruteforce(std::size_t r, std::size_t s, std::size_t dim_v0, std::size_t dim_w);
std::size_t inv_dim_predicted(std::size_t r, std::size_t s, std::size_t dim_v0, std::size_t dim_w);

/// Φ_σ at v = (e_0..e_{r-1}), pairs ((e_i*)², e_{τ⁻¹(i)}); |C(σ)| when σ ~ τ, else 0. Needs dimV0 >= r.
Rational stab_evaluation(const Permutation& sigma, const Permutation& tau, std::size_t dim_v0);

}  // namespace gfc::inv
