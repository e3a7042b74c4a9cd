#pragma once

// Isotypic data of finite linear group actions, over C (diagonal weights)
// and over R (cyclic generators or explicit matrix groups), plus the
// conjugacy-class bookkeeping that indexes inertia components.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gfc/linalg.hpp"
#include "gfc/rational.hpp"

namespace gfc::rep {

enum class Field { Real, Complex };

std::string to_string(Field f);
Field parse_field(const std::string& s);

struct Factor {
  std::string label;
  std::size_t multiplicity = 1;
  std::size_t dim = 1;  // real dimension of W_alpha for real decompositions, complex dimension otherwise

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Decomposition {
  Field field = Field::Real;
  std::size_t dimV0 = 0;
  std::size_t mMinus1 = 0;  // real only
  std::vector<Factor> factors;
  /// Set for actions outside the cyclic-group setting the theory is stated for.
  bool beyond_hypothesis = false;

  std::size_t ambient_dim() const;
  /// Throws InputError on zero multiplicities, duplicate labels, bad dims or a nonzero mMinus1 over C.
  void validate() const;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

using Matrix = std::vector<linalg::Vector>;

Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix power(const Matrix& a, std::size_t k);
bool is_identity(const Matrix& a);
/// Multiplicative order, or nullopt if it exceeds `limit`.
std::optional<std::size_t> matrix_order(const Matrix& a, std::size_t limit = 10000);
std::size_t fixed_dimension(const Matrix& a);
Matrix inverse(const Matrix& a);

/// Diagonal action on C^n by exp(2 pi i k_j / N).
Decomposition decompose_complex(std::size_t N, const std::vector<long long>& exponents);

/// Block form of a real cyclic generator: +1 eigenlines, -1 eigenlines, and rotations by 2 pi k / N.
struct RealBlocks {
  std::size_t plus1 = 0;
  std::size_t minus1 = 0;
  std::vector<long long> rotations;
};

Decomposition decompose_real_cyclic(std::size_t N, const RealBlocks& blocks);
/// Rational generator matrix of order exactly N; eigenvalue counts via fixed spaces of powers.
Decomposition decompose_real_cyclic(std::size_t N, const Matrix& generator);

struct ConjugacyClass {
  Matrix representative;
  std::size_t order = 1;
  std::size_t size = 1;
  std::size_t centralizer_order = 1;
  std::vector<std::size_t> members;  // indices into the sorted group
};

/// Closed finite matrix group, elements sorted by (order, entries).
class FiniteMatrixGroup {
 public:
  /// Throws InputError if the list is empty, ragged, singular, has duplicates or is not closed.
  explicit FiniteMatrixGroup(std::vector<Matrix> elements, std::size_t max_order = 2048);

  std::size_t order() const { return elements_.size(); }
  std::size_t dim() const { return elements_.front().size(); }
  const std::vector<Matrix>& elements() const { return elements_; }
  std::size_t index_of(const Matrix& m) const;
  std::size_t product(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t element_order(std::size_t a) const { return orders_[a]; }
  bool is_cyclic() const;
  /// An element of maximal order (a generator when cyclic).
  std::size_t generator() const;
  std::vector<ConjugacyClass> conjugacy_classes() const;

 private:
  std::vector<Matrix> elements_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> orders_;
};

/// True when some real irreducible constituent has endomorphism algebra H.
bool has_quaternionic_constituent(const FiniteMatrixGroup& g);

/// Decomposition of an explicit real matrix group. Cyclic groups are decomposed through a generator;
/// quaternionic constituents raise QuaternionicError; other non-cyclic groups raise InputError.
Decomposition decompose_real_group(const FiniteMatrixGroup& g);

struct InertiaComponent {
  Matrix representative;
  std::size_t element_order = 1;
  std::size_t class_size = 1;
  std::size_t centralizer_order = 1;
  std::size_t fixed_dim = 0;
  Decomposition decomposition;  // of the cyclic action generated by the representative
};

/// One component per conjugacy class, identity first; asserts the class equation.
std::vector<InertiaComponent> inertia_components(const FiniteMatrixGroup& g, unsigned jobs = 1);

/// Complexification of a real cyclic decomposition: factor (k, m) becomes (k, m) and (N-k, m).
Decomposition complexify(const Decomposition& real, std::size_t N);

}  // namespace gfc::rep
