#include "doctest.h"

#include <random>

#include "gfc/char_classes.hpp"
#include "gfc/errors.hpp"
#include "gfc/gca.hpp"
#include "gfc/weil.hpp"

using namespace gfc;
using cc::Mode;

namespace {

using Dims = std::vector<std::size_t>;

rep::Decomposition real(std::size_t v0, std::size_t minus1, std::vector<std::size_t> ms = {}) {
  rep::Decomposition d;
  d.field = rep::Field::Real;
  d.dimV0 = v0;
  d.mMinus1 = minus1;
  for (std::size_t i = 0; i < ms.size(); ++i) d.factors.push_back({std::to_string(i + 1), ms[i], 2});
  return d;
}

rep::Decomposition complex(std::size_t v0, std::vector<std::size_t> ms = {}) {
  rep::Decomposition d;
  d.field = rep::Field::Complex;
  d.dimV0 = v0;
  for (std::size_t i = 0; i < ms.size(); ++i) d.factors.push_back({std::to_string(i + 1), ms[i], 1});
  return d;
}

std::vector<std::string> names(const std::vector<cc::ClassLabel>& labels, const std::string& kind = "") {
  std::vector<std::string> out;
  for (const auto& l : labels)
    if (kind.empty() || l.kind == kind) out.push_back(l.name);
  return out;
}

bool acyclic(const linalg::BettiTable& b) {
  if (b.at(0) != 1) return false;
  for (std::size_t q = 1; q < b.size(); ++q)
    if (b.at(q) && *b.at(q) != 0) return false;
  return true;
}

// Partitions of q/2 into parts <= n with total (weighted) degree <= 2n, i.e. the truncated polynomial ring.
std::size_t truncated_polynomial_dim(std::size_t q, std::size_t n) {
  if (q % 2 || q > 2 * n) return 0;
  std::vector<std::size_t> p(q / 2 + 1, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= n; ++part)
    for (std::size_t s = part; s <= q / 2; ++s) p[s] += p[s - part];
  return p[q / 2];
}

}  // namespace

TEST_SUITE("char-classes") {
  TEST_CASE("mode names") {
    for (Mode m : {Mode::Absolute, Mode::RelativeGl, Mode::RelativeSo, Mode::RelativeO})
      CHECK(cc::parse_mode(cc::to_string(m)) == m);
    CHECK_THROWS_AS(cc::parse_mode("relative"), InputError);
  }

  TEST_CASE("complex (1; m = 1) relative to gl") {
    const auto r = cc::char_class_ring(complex(1, {1}), Mode::RelativeGl, 4);
    CHECK(r.betti.known_prefix(5) == Dims{1, 0, 2, 0, 0});
    CHECK(r.truncation_bound == 2);
    CHECK(names(r.generators, "chern") == std::vector<std::string>{"xi1", "eta1[1]"});
    bool product_vanishes = false;
    for (const auto& m : r.vanishing.monomials)
      if (m.name == "xi1*eta1[1]") product_vanishes = m.zero_when_truncated && m.nonzero_untruncated;
    CHECK(product_vanishes);
    CHECK(r.vanishing.verified);
  }

  TEST_CASE("sign representation: absolute ring and its degree-1 class") {
    const auto r = cc::char_class_ring(real(0, 1), Mode::Absolute, 3);
    CHECK(r.betti.known_prefix(4) == Dims{1, 1, 0, 0});
    CHECK(r.truncation_bound == 0);
    CHECK(acyclic(r.control));
    CHECK(r.primary_dims[1] == 0);
    const auto s = cc::secondary_survivors(real(0, 1), Mode::RelativeO, 3);
    REQUIRE(s.size() == 1);
    CHECK(s[0].degree == 1);
  }

  TEST_CASE("Godbillon-Vey class on W_1") {
    const auto s = cc::secondary_survivors(real(1, 0), Mode::RelativeO, 4);
    REQUIRE(s.size() == 1);
    CHECK(s[0].degree == 3);
    CHECK(s[0].corner);
    CHECK(s[0].filtration == 2);
    const auto r = cc::char_class_ring(real(1, 0), Mode::RelativeO, 4);
    CHECK(r.betti.known_prefix(5) == Dims{1, 0, 0, 1, 0});
  }

  TEST_CASE("secondary survivors need a compact relative mode") {
    CHECK_THROWS_AS(cc::secondary_survivors(real(1, 0), Mode::Absolute, 3), InputError);
    CHECK_THROWS_AS(cc::secondary_survivors(real(1, 0), Mode::RelativeGl, 3), InputError);
    CHECK_THROWS_AS(cc::char_class_ring(complex(1), Mode::RelativeO, 3), InputError);
  }

  TEST_CASE("one complex-type factor with dimV0 = 0: fiber classes of U1 x U1 / U1") {
    const auto r = cc::char_class_ring(real(0, 0, {1}), Mode::RelativeSo, 3);
    CHECK(r.truncation_bound == 0);
    CHECK(r.fiber_betti.known_prefix(2) == Dims{1, 1});
    CHECK(r.fiber_exterior);
    for (const auto& s : r.secondary) CHECK(s.degree == 1);
    CHECK(!r.secondary.empty());
  }

  TEST_CASE("vanishing report") {
    const auto full = cc::vanishing_report(real(2, 0));
    CHECK(full.bound == 4);
    CHECK(full.verified);
    for (const auto& m : full.monomials) CHECK(m.degree > 4);
    const auto none = cc::vanishing_report(real(0, 2));
    CHECK(none.bound == 0);
    CHECK(none.verified);
    CHECK(none.monomials.size() == 2);  // p1 and p2 of the W-1 block
    for (const auto& m : none.monomials) CHECK(m.degree > 0);
    const auto c = cc::vanishing_report(complex(1, {1}));
    CHECK(c.bound == 2);
    CHECK(c.verified);
  }

  TEST_CASE("vanishing bound is monotone in dimV0") {
    int last = -1;
    for (std::size_t n = 0; n <= 3; ++n) {
      const int b = cc::vanishing_report(real(n, 1)).bound;
      CHECK(b > last);
      last = b;
    }
  }

  TEST_CASE("trivial complex action relative to gl is the truncated polynomial ring") {
    for (std::size_t n = 1; n <= 3; ++n) {
      const int top = static_cast<int>(2 * n + 2);
      const auto r = cc::char_class_ring(complex(n), Mode::RelativeGl, top);
      for (int q = 0; q <= top; ++q) CHECK(*r.betti.at(q) == truncated_polynomial_dim(q, n));
    }
  }

  TEST_CASE("relative Betti totals are bounded by absolute ones") {
    auto total = [](const cc::RingReport& r, int top) {
      std::size_t t = 0;
      for (int q = 0; q <= top; ++q) t += *r.betti.at(q);
      return t;
    };
    for (const auto& d : {real(1, 0), real(1, 1), real(0, 2), real(0, 0, {1}), real(2, 0), complex(1, {1})}) {
      // The whole truncated complex, so the totals are complete.
      const int top = 2 * static_cast<int>(d.dimV0) + static_cast<int>(cc::lie_product_for(d).dim());
      const std::size_t abs = total(cc::char_class_ring(d, Mode::Absolute, top), top);
      for (Mode m : {Mode::RelativeGl, Mode::RelativeO}) {
        if (d.field == rep::Field::Complex && m != Mode::RelativeGl) continue;
        CHECK(total(cc::char_class_ring(d, m, top), top) <= abs);
      }
    }
  }

  TEST_CASE("SO-relative rings can exceed the absolute total") {
    // The Euler class of so(2) has no counterpart in W(gl2)_4: H(W_2, SO_2) has total 8, H(W_2) has 6.
    const auto so = cc::char_class_ring(real(2, 0), Mode::RelativeSo, 8);
    const auto abs = cc::char_class_ring(real(2, 0), Mode::Absolute, 8);
    CHECK(so.betti.known_prefix(9) == Dims{1, 0, 1, 0, 1, 2, 1, 2, 0});
    CHECK(abs.betti.known_prefix(9) == Dims{1, 0, 0, 0, 0, 2, 0, 1, 2});
    CHECK(so.fiber_betti.known_prefix(4) == Dims{1, 1, 1, 1});  // H(U(2)/SO(2))
    CHECK(!so.fiber_exterior);
  }

  TEST_CASE("GV-type secondary classes exist whenever dimV0 >= 1") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(0, 1);
    for (int trial = 0; trial < 6; ++trial) {
      const auto d = real(1 + pick(rng), pick(rng), pick(rng) ? std::vector<std::size_t>{1} : std::vector<std::size_t>{});
      CAPTURE(d.dimV0);
      const int top = 2 * static_cast<int>(d.dimV0) + 2;
      CHECK(!cc::secondary_survivors(d, Mode::RelativeO, top).empty());
    }
  }

  TEST_CASE("ring Betti numbers match a direct Weil computation") {
    for (const auto& d : {real(1, 1), complex(1, {1}), real(0, 0, {1})}) {
      const auto r = cc::char_class_ring(d, Mode::Absolute, 4);
      const auto w = weil::weil_algebra(cc::lie_product_for(d), 2 * static_cast<int>(d.dimV0));
      CHECK(r.betti.known_prefix(5) == gca::cdga_cohomology(w, 4).known_prefix(5));
    }
  }

  TEST_CASE("inertia reports for ±I on R^2") {
    rep::FiniteMatrixGroup g({rep::identity_matrix(2), rep::Matrix{{Rational(-1), 0}, {0, Rational(-1)}}});
    const auto entries = cc::inertia_report(g, Mode::RelativeO, 5, 2);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].report.decomposition == real(2, 0));
    CHECK(entries[1].report.decomposition == real(0, 2));
    CHECK(entries[0].report.betti.known_prefix(6) ==
          cc::char_class_ring(real(2, 0), Mode::RelativeO, 5).betti.known_prefix(6));
  }

  TEST_CASE("inertia reports for block-form cyclic actions") {
    rep::RealBlocks minus;
    minus.minus1 = 1;
    const auto e = cc::inertia_report(2, minus, Mode::RelativeO, 3);
    REQUIRE(e.size() == 2);
    CHECK(e[0].label == "e");
    CHECK(e[0].report.decomposition == real(1, 0));
    CHECK(e[1].report.decomposition == real(0, 1));

    rep::RealBlocks rot;
    rot.plus1 = 1;
    rot.rotations = {1};
    std::size_t total = 0;
    for (const auto& x : cc::inertia_report(6, rot, Mode::RelativeO, 3)) total += x.class_size;
    CHECK(total == 6);
    // g^3 is a half turn: the rotation plane becomes two copies of the sign representation.
    CHECK(cc::power_decomposition(6, rot, 3) == real(1, 2));
    CHECK(cc::power_decomposition(6, rot, 2).factors.size() == 1);
    CHECK(cc::power_decomposition(3, std::vector<long long>{0, 1}, 0) == complex(2));
  }
}
