#pragma once

// Free graded-commutative algebras: exterior on odd generators, polynomial
// on even ones, optionally truncated by filtration weight, with a
// differential given on generators and extended by the Leibniz rule.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gfc/linalg.hpp"
#include "gfc/rational.hpp"

namespace gfc::gca {

struct GeneratorSpec {
  std::string name;
  int degree = 1;
  int filtration_weight = 0;

  bool odd() const { return degree % 2 != 0; }
};

/// Exponent per generator, in declaration order.
using Monomial = std::vector<std::uint8_t>;
using Element = std::map<Monomial, Rational>;

/// x += c * y
void add_scaled(Element& x, const Rational& c, const Element& y);

class FreeGCA {
 public:
  /// `differential[i]` is d of generator i. Throws InvariantViolation unless d has degree +1,
  /// does not lower filtration weight, and squares to zero on generators.
  FreeGCA(std::vector<GeneratorSpec> generators, std::optional<int> truncation_bound,
          std::vector<Element> differential);

  std::size_t num_generators() const { return generators_.size(); }
  const std::vector<GeneratorSpec>& generators() const { return generators_; }
  const GeneratorSpec& generator(std::size_t i) const { return generators_.at(i); }
  std::optional<int> truncation_bound() const { return bound_; }
  const std::vector<Element>& differential_on_generators() const { return differential_; }

  int degree(const Monomial& m) const;
  int filtration(const Monomial& m) const;
  bool survives(const Monomial& m) const;
  std::string format(const Monomial& m) const;
  std::string format(const Element& x) const;

  Monomial unit_monomial() const { return Monomial(generators_.size(), 0); }
  Element one() const;
  Element generator_element(std::size_t i) const;
  Element from_monomial(const Monomial& m, const Rational& c = Rational(1)) const;

  /// Product of monomials with its Koszul sign; nullopt when zero (odd square or truncated).
  std::optional<std::pair<int, Monomial>> multiply(const Monomial& u, const Monomial& v) const;
  Element multiply(const Element& x, const Element& y) const;

  /// Derivation determined by images on generators; `odd` selects the graded Leibniz sign.
  Element apply_derivation(const std::vector<Element>& images, bool odd, const Element& x) const;
  Element apply_differential(const Element& x) const;
  /// Algebra map determined by images on generators (images must have matching parity).
  Element apply_morphism(const std::vector<Element>& images, const Element& x) const;

  /// All surviving monomials of the given degree, sorted by exponent vector.
  std::vector<Monomial> monomial_basis(int degree) const;
  /// Same, restricted to monomials using only generators with allowed[i] true.
  std::vector<Monomial> monomial_basis(int degree, const std::vector<bool>& allowed) const;

  /// Matrix of d : degree q -> degree q+1 over monomial bases.
  linalg::SparseMatrix differential_matrix(int q) const;
  /// Same but keeping only the filtration-preserving part of d (associated graded).
  linalg::SparseMatrix graded_differential_matrix(int q) const;

 private:
  Element apply_derivation_monomial(const std::vector<Element>& images, bool odd, const Monomial& m) const;
  linalg::SparseMatrix matrix_of(int q, bool graded_only) const;

  std::vector<GeneratorSpec> generators_;
  std::optional<int> bound_;
  std::vector<Element> differential_;
};

/// Sparse coordinate vector of x over a sorted monomial basis; throws if x leaves the basis.
linalg::SparseVector coordinates(const Element& x, const std::vector<Monomial>& basis);
Element element_from(const linalg::SparseVector& v, const std::vector<Monomial>& basis);

/// Betti numbers for degrees 0..maxDegree; degree maxDegree+1 is reported unknown.
linalg::BettiTable cdga_cohomology(const FreeGCA& a, int max_degree, bool with_representatives = false,
                                   unsigned jobs = 1);

/// Cohomology of the associated graded complex (filtration-preserving part of d), degrees 0..maxDegree.
linalg::BettiTable associated_graded_cohomology(const FreeGCA& a, int max_degree, unsigned jobs = 1);

/// A d-stable subspace per degree, each given as reduced-row-echelon rows over a monomial list.
struct Subcomplex {
  std::vector<std::vector<Monomial>> monomials;             // degree -> monomials spanning the ambient
  std::vector<std::vector<linalg::SparseVector>> basis;     // degree -> RREF rows over `monomials`
};

/// Cohomology of a subcomplex in degrees 0..basis.size()-2; verifies d maps each degree into the next.
linalg::BettiTable subcomplex_cohomology(const FreeGCA& a, const Subcomplex& s, bool with_representatives = false,
                                         unsigned jobs = 1);

/// Hilbert series coefficients (dims per degree 0..maxDegree) of monomial_basis.
std::vector<std::size_t> hilbert_series(const FreeGCA& a, int max_degree);

}  // namespace gfc::gca
