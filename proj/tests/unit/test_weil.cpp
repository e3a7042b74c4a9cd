#include "doctest.h"

#include "gfc/ce_engine.hpp"
#include "gfc/errors.hpp"
#include "gfc/gca.hpp"
#include "gfc/weil.hpp"

using namespace gfc;
using weil::FactorKind;
using weil::make_factor;

namespace {

using Dims = std::vector<std::size_t>;

weil::LieProduct product(std::vector<std::pair<FactorKind, std::size_t>> parts) {
  std::vector<weil::LieFactor> f;
  for (auto [k, n] : parts) f.push_back(make_factor(k, n));
  return weil::LieProduct(std::move(f));
}

weil::SubalgebraSpec spec(std::vector<weil::SubalgebraKind> k, bool component_group = false) {
  return weil::SubalgebraSpec{std::move(k), component_group};
}

long long euler(const Dims& d) {
  long long e = 0;
  for (std::size_t q = 0; q < d.size(); ++q) e += (q % 2 ? -1 : 1) * static_cast<long long>(d[q]);
  return e;
}

}  // namespace

TEST_SUITE("weil") {
  TEST_CASE("W(gl_real 1) truncated at 2") {
    const auto w = weil::weil_algebra(product({{FactorKind::GlReal, 1}}), 2);
    REQUIRE(w.num_generators() == 2);
    CHECK(w.generator(0).degree == 1);
    CHECK(w.generator(1).degree == 2);
    CHECK(w.generator(1).filtration_weight == 2);
    CHECK(w.apply_differential(w.generator_element(0)) == w.generator_element(1));
    CHECK(w.apply_differential(w.generator_element(1)).empty());
    CHECK(gca::cdga_cohomology(w, 3).known_prefix(4) == Dims{1, 0, 0, 1});
  }

  TEST_CASE("untruncated Weil algebras are acyclic") {
    for (const auto& p : {product({{FactorKind::GlReal, 1}}), product({{FactorKind::GlReal, 1}, {FactorKind::GlReal, 1}}),
                          product({{FactorKind::Bgl, 1}}), product({{FactorKind::GlReal, 2}})}) {
      const int top = p.dim() > 2 ? 4 : 6;
      Dims expected(top + 1, 0);
      expected[0] = 1;
      CHECK(gca::cdga_cohomology(weil::weil_algebra(p, std::nullopt), top).known_prefix(top + 1) == expected);
    }
  }

  TEST_CASE("bound 0 is the Chevalley-Eilenberg complex") {
    CHECK(gca::cdga_cohomology(weil::weil_algebra(product({{FactorKind::GlReal, 1}}), 0), 1).known_prefix(2) == Dims{1, 1});
    for (const auto& p : {product({{FactorKind::GlReal, 2}}), product({{FactorKind::Bgl, 1}}),
                          product({{FactorKind::U, 2}}), product({{FactorKind::OReal, 3}}),
                          product({{FactorKind::GlReal, 1}, {FactorKind::Bgl, 1}}), product({{FactorKind::GlReal, 3}})}) {
      const int top = static_cast<int>(p.dim());
      CAPTURE(p.label());
      CHECK(gca::cdga_cohomology(weil::weil_algebra(p, 0), top).known_prefix(top + 1) ==
            ce::ce_cohomology(p.algebra(), top).known_prefix(top + 1));
    }
  }

  TEST_CASE("odd truncation bounds are rejected") {
    CHECK_THROWS_AS(weil::weil_algebra(product({{FactorKind::GlReal, 1}}), 3), InputError);
  }

  TEST_CASE("generator differential agrees with the three-sum formula") {
    CHECK(weil::verify_weil_differential(lie::gl(1), 4) > 0);
    CHECK(weil::verify_weil_differential(lie::gl(2), 3) > 0);
    CHECK(weil::verify_weil_differential(lie::bgl(1), 3) > 0);
    CHECK(weil::verify_weil_differential(lie::subalgebra(lie::gl(3), lie::o_span(3)), 3) > 0);
  }

  TEST_CASE("relative Weil examples") {
    using K = weil::SubalgebraKind;
    const auto bgl_u = weil::relative_weil(product({{FactorKind::Bgl, 1}}), spec({K::Compact}), 0, 3);
    CHECK(weil::relative_cohomology(bgl_u).known_prefix(4) == Dims{1, 1, 0, 0});
    const auto o1 = weil::relative_weil(product({{FactorKind::GlReal, 1}}), spec({K::Compact}, true), 2, 4);
    CHECK(weil::relative_cohomology(o1).known_prefix(5) == Dims{1, 0, 0, 1, 0});
    const auto gl_gl = weil::relative_weil(product({{FactorKind::GlComplex, 1}, {FactorKind::GlComplex, 1}}),
                                           spec({K::Full, K::Full}), 2, 4);
    CHECK(weil::relative_cohomology(gl_gl).known_prefix(5) == Dims{1, 0, 2, 0, 0});
  }

  TEST_CASE("relative to the zero subalgebra equals absolute") {
    using K = weil::SubalgebraKind;
    for (const auto& p : {product({{FactorKind::GlReal, 2}}), product({{FactorKind::GlReal, 1}, {FactorKind::Bgl, 1}})}) {
      for (int bound : {0, 2, 4}) {
        const auto rel = weil::relative_weil(p, spec(std::vector<K>(p.factors().size(), K::None)), bound, 4);
        CHECK(weil::relative_cohomology(rel).known_prefix(5) ==
              gca::cdga_cohomology(weil::weil_algebra(p, bound), 4).known_prefix(5));
      }
    }
  }

  TEST_CASE("relative cohomology of gl2 modulo o2 and the component group") {
    using K = weil::SubalgebraKind;
    // Fixed points of the component group can only shrink the SO(2)-relative answer.
    const auto p = product({{FactorKind::GlReal, 2}});
    const auto so = weil::relative_cohomology(weil::relative_weil(p, spec({K::Compact}), 4, 6));
    const auto o = weil::relative_cohomology(weil::relative_weil(p, spec({K::Compact}, true), 4, 6));
    for (std::size_t q = 0; q <= 6; ++q) CHECK(*o.at(q) <= *so.at(q));
    CHECK(o.at(0) == 1);
  }

  TEST_CASE("invariant polynomial dimensions") {
    CHECK(weil::invariant_polynomial_dims(lie::gl(1), 3) == Dims{1, 1, 1, 1});
    CHECK(weil::invariant_polynomial_dims(lie::gl(2), 2)[2] == 2);
    CHECK(weil::invariant_polynomial_dims(lie::bgl(1), 4) == Dims{1, 2, 3, 4, 5});
    CHECK(weil::invariant_polynomial_dims(lie::gl(3), 3) == Dims{1, 1, 2, 3});
  }

  TEST_CASE("invariant polynomials are cocycles of the untruncated Weil algebra") {
    const auto g = lie::gl(2);
    const auto w = weil::weil_algebra(g, std::nullopt);
    const auto polys = weil::invariant_polynomials(g, 3);
    for (const auto& degree : polys)
      for (const auto& p : degree) CHECK(w.apply_differential(p).empty());
  }

  TEST_CASE("E2 page examples") {
    const auto e = weil::e2_page(lie::gl(1), 2, 3);
    REQUIRE(e.entries.size() >= 3);
    CHECK(e.entries[0][0] == 1);
    CHECK(e.entries[0][1] == 1);
    CHECK(e.entries[1][0] == 0);
    CHECK(e.entries[1][1] == 0);
    CHECK(e.entries[2][0] == 1);
    CHECK(e.entries[2][1] == 1);
    const auto wide = weil::e2_page(lie::gl(1), 2, 6);
    for (std::size_t p = 3; p < wide.entries.size(); ++p)
      for (auto x : wide.entries[p]) CHECK(x == 0);
  }

  TEST_CASE("E2 totals bound the Betti numbers and share the Euler characteristic") {
    const std::vector<std::pair<lie::LieAlgebra, int>> corpus = {
        {lie::gl(1), 2}, {lie::gl(2), 4}, {lie::direct_sum({lie::gl(1), lie::gl(1)}), 2}, {lie::bgl(1), 0},
        {lie::bgl(1), 2}};
    for (const auto& [g, bound] : corpus) {
      const int top = bound + static_cast<int>(g.dim());
      const auto e = weil::e2_page(g, bound, top);
      const auto b = gca::cdga_cohomology(weil::weil_algebra(g, bound), top).known_prefix(top + 1);
      for (int n = 0; n <= top; ++n) CHECK(b[n] <= e.totals[n]);
      CHECK(euler(b) == euler(e.totals));
    }
  }

  TEST_CASE("polynomial ring Hilbert series") {
    CHECK(weil::polynomial_ring_hilbert_series({1, 1}, 4) == Dims{1, 2, 3, 4, 5});
    CHECK(weil::polynomial_ring_hilbert_series({1, 2}, 4) == Dims{1, 1, 2, 2, 3});
  }
}
