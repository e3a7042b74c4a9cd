#pragma once

// Characteristic-class source rings per inertia component: the truncated
// (relative) Weil algebra dictated by a decomposition and a relativity mode,
// with primary/secondary labels and the equivariant vanishing bound 2 dim V0.

#include <optional>
#include <string>
#include <vector>

#include "gfc/decomposition.hpp"
#include "gfc/linalg.hpp"
#include "gfc/weil.hpp"

namespace gfc::cc {

enum class Mode { Absolute, RelativeGl, RelativeSo, RelativeO };

std::string to_string(Mode m);
/// "absolute", "relative-gl", "relative-so" or "relative-o"; InputError otherwise.
Mode parse_mode(const std::string& s);

struct ClassLabel {
  std::string name;
  int degree = 0;
  std::string kind;   // "pontryagin", "chern", "chern-pair", "fiber" or "secondary"
  std::string block;  // "V0", "W-1", a factor label, or "fiber"
  /// Secondary classes: largest p with the class in F^p (p = symmetric filtration weight).
  int filtration = -1;
  /// Secondary classes with p equal to the truncation bound.
  bool corner = false;
};

/// gl(V0), gl(W_-1) and bgl(m) per complex-type factor over R; gl(V0) and gl(m) per factor over C.
/// Blocks of dimension zero are omitted.
weil::LieProduct lie_product_for(const rep::Decomposition& d);
/// Block names parallel to lie_product_for(d).factors().
std::vector<std::string> block_names(const rep::Decomposition& d);
/// Throws InputError for relative-so / relative-o over C.
weil::SubalgebraSpec subalgebra_for(const rep::Decomposition& d, Mode mode);

/// Even generators of (S g*)^g per block, as Weil-degree labels.
std::vector<ClassLabel> base_generators(const rep::Decomposition& d);

struct VanishingMonomial {
  std::string name;  // e.g. "p1^2*x1[1]"
  int degree = 0;
  bool zero_when_truncated = false;
  bool nonzero_untruncated = false;
};

struct VanishingReport {
  int bound = 0;
  /// Minimal base monomials of degree > bound: dividing by any factor lands within the bound.
  std::vector<VanishingMonomial> monomials;
  bool verified = false;
};

VanishingReport vanishing_report(const rep::Decomposition& d);

struct RingReport {
  std::string inertia_label;
  rep::Decomposition decomposition;
  Mode mode = Mode::Absolute;
  int truncation_bound = 0;
  int max_degree = 0;
  std::string lie_algebra;
  std::vector<std::size_t> complex_dims;  // basic cochains per degree 0..maxDegree+1
  std::vector<ClassLabel> generators;     // base generators, then fiber generators
  linalg::BettiTable betti;
  std::vector<std::size_t> primary_dims;  // per degree: dim F^q H^q
  std::vector<ClassLabel> secondary;      // relative-so / relative-o only
  linalg::BettiTable fiber_betti;         // H(g, k) = untruncated-bound-0 basic cohomology
  bool fiber_exterior = true;             // fiber Betti factors as an exterior algebra in the window
  linalg::BettiTable control;             // untruncated absolute Weil algebra
  VanishingReport vanishing;
};

RingReport char_class_ring(const rep::Decomposition& d, Mode mode, int max_degree, unsigned jobs = 1);

/// gr^p H^q dimensions of a Weil subcomplex, p = 0..q, for q = 0..maxDegree.
std::vector<std::vector<std::size_t>> filtration_profile(const gca::FreeGCA& w, const gca::Subcomplex& s,
                                                         int max_degree);

/// Classes that have no purely polynomial representative; mode must be relative-so or relative-o.
std::vector<ClassLabel> secondary_survivors(const rep::Decomposition& d, Mode mode, int max_degree, unsigned jobs = 1);

struct InertiaEntry {
  std::string label;
  std::size_t element_order = 1;
  std::size_t class_size = 1;
  std::size_t centralizer_order = 1;
  std::size_t fixed_dim = 0;
  std::optional<rep::Matrix> representative;  // absent for actions given by rotation data
  RingReport report;
};

std::vector<InertiaEntry> inertia_report(const rep::FiniteMatrixGroup& g, Mode mode, int max_degree,
                                         unsigned jobs = 1);
/// Cyclic group of order N in block form; one entry per power g^t, t = 0..N-1.
std::vector<InertiaEntry> inertia_report(std::size_t N, const rep::RealBlocks& blocks, Mode mode, int max_degree,
                                         unsigned jobs = 1);
/// Complex cyclic action with the given weights.
std::vector<InertiaEntry> inertia_report(std::size_t N, const std::vector<long long>& weights, Mode mode,
                                         int max_degree, unsigned jobs = 1);

/// Decomposition of g^t for the block form of g.
rep::Decomposition power_decomposition(std::size_t N, const rep::RealBlocks& blocks, std::size_t t);
rep::Decomposition power_decomposition(std::size_t N, const std::vector<long long>& weights, std::size_t t);

}  // namespace gfc::cc
