#pragma once

// Chevalley-Eilenberg cochains with trivial coefficients: the full complex
// of a finite-dimensional Lie algebra, and the weight-zero subcomplex of a
// weight-graded slice of the invariant formal vector fields W_X.

#include <cstdint>
#include <vector>

#include "gfc/decomposition.hpp"
#include "gfc/lie_algebra.hpp"
#include "gfc/linalg.hpp"

namespace gfc::ce {

/// Largest Lie algebra dimension accepted by ce_cohomology (the complex has 2^dim cochains).
inline constexpr std::size_t kMaxCeDim = 16;
/// Largest number of weight-zero cochains accepted in a single degree.
inline constexpr std::size_t kMaxWeightZeroCochains = 400000;

using Subset = std::vector<std::uint16_t>;

/// CE complex over the given cochain bases (sorted subsets per degree 0..D); every bracket
/// term must land in the basis of the lower degree.
linalg::ChainComplexSlice ce_complex(const lie::LieAlgebra& g, const std::vector<std::vector<Subset>>& cochains,
                                     unsigned jobs = 1);

/// H^q(g) for q <= maxDegree; degree maxDegree+1 is unknown. Throws InfeasibleError above kMaxCeDim.
linalg::BettiTable ce_cohomology(const lie::LieAlgebra& g, int max_degree, unsigned jobs = 1);

/// Finite slice of W_X: vector fields x^a d_i (weight |a|-1) and x^a (x) E (weight |a|) up to maxWeight.
/// Real decompositions use gl_{mMinus1}(R) and bgl_m per complex-type factor; complex ones gl_m per factor.
lie::LieAlgebra build_wx(const rep::Decomposition& d, int max_weight);

/// Weight-zero cochains of degree q, sorted.
std::vector<Subset> weight_zero_subsets(const lie::LieAlgebra& g, std::size_t q);

/// Cohomology of the weight-zero subcomplex for degrees <= maxDegree. A truncated slice must have
/// window >= maxDegree: the degree-maxDegree differential sees elements of weight up to maxDegree.
linalg::BettiTable weight_zero_cohomology(const lie::LieAlgebra& g, int max_degree, unsigned jobs = 1);

/// Smallest maxWeight accepted by weight_zero_cohomology for the given maxDegree.
inline int required_window(int max_degree) { return max_degree; }

}  // namespace gfc::ce
