#include "doctest.h"

#include <map>

#include "gfc/ce_engine.hpp"
#include "gfc/errors.hpp"
#include "gfc/gca.hpp"
#include "gfc/weil.hpp"

using namespace gfc;

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

std::map<std::string, std::size_t> index_by_symbol(const lie::LieAlgebra& g) {
  std::map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < g.dim(); ++i) m[g.basis()[i].symbol] = i;
  return m;
}

Dims binomials(std::size_t k) {
  Dims out(k + 1, 1);
  for (std::size_t q = 1; q <= k; ++q) out[q] = out[q - 1] * (k - q + 1) / q;
  return out;
}

}  // namespace

TEST_SUITE("ce-engine") {
  TEST_CASE("ce_cohomology examples") {
    CHECK(ce::ce_cohomology(lie::gl(1), 1).known_prefix(2) == Dims{1, 1});
    for (std::size_t k = 0; k <= 5; ++k)
      CHECK(ce::ce_cohomology(lie::abelian(k), static_cast<int>(k)).known_prefix(k + 1) == binomials(k));
    const auto u1 = weil::make_factor(weil::FactorKind::U, 1).algebra;
    CHECK(ce::ce_cohomology(lie::bgl(1), 2).known_prefix(3) == Dims{1, 2, 1});
    CHECK(ce::ce_cohomology(lie::direct_sum({u1, u1}), 2).known_prefix(3) == Dims{1, 2, 1});
  }

  TEST_CASE("degree 0 and 1 of CE cohomology") {
    for (const auto& g : {lie::gl(2), lie::gl(3), lie::bgl(1), lie::bgl(2), lie::subalgebra(lie::gl(3), lie::o_span(3))}) {
      const auto b = ce::ce_cohomology(g, 1);
      CHECK(b.at(0) == 1);
      CHECK(b.at(1) == g.dim() - g.derived_dim());
    }
  }

  TEST_CASE("Poincare duality for gl_n") {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto g = lie::gl(n);
      const int top = static_cast<int>(g.dim());
      const auto b = ce::ce_cohomology(g, top).known_prefix(top + 1);
      for (int q = 0; q <= top; ++q) CHECK(b[q] == b[top - q]);
    }
  }

  TEST_CASE("CE dimension bound") {
    CHECK_THROWS_AS(ce::ce_cohomology(lie::abelian(ce::kMaxCeDim + 1), 1), InfeasibleError);
  }

  TEST_CASE("W_X for the sign representation is gl_real(1)") {
    const auto l = ce::build_wx(real(0, 1), 3);
    REQUIRE(l.dim() == 1);
    CHECK(l.weight(0) == 0);
    CHECK(l.is_abelian());
  }

  TEST_CASE("W_X slice for dimV0 = 1 plus one complex factor") {
    const auto l = ce::build_wx(complex(1, {1}), 2);
    const auto idx = index_by_symbol(l);
    CHECK(l.dim() == 7);
    for (const char* s : {"d0", "x0*d0", "x0^2*d0", "x0^3*d0", "E00", "x0*E00", "x0^2*E00"}) CHECK(idx.count(s) == 1);
    const std::size_t euler = idx.at("x0*d0");
    for (int k = 0; k <= 2; ++k) {
      const std::string name = k == 0 ? "E00" : (k == 1 ? "x0*E00" : "x0^2*E00");
      const auto& b = l.bracket(euler, idx.at(name));
      if (k == 0) {
        CHECK(b.empty());
      } else {
        REQUIRE(b.size() == 1);
        CHECK(b[0].first == idx.at(name));
        CHECK(b[0].second == Rational(k));
      }
    }
  }

  TEST_CASE("Witt brackets on the W_1 slice") {
    const auto l = ce::build_wx(real(1, 0), 3);
    REQUIRE(l.dim() == 5);  // x^a d for a = 0..4
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b) {
        const auto& br = l.bracket(a, b);
        const long c = static_cast<long>(b) - static_cast<long>(a);
        const std::size_t target = a + b - 1;
        if (a + b == 0 || c == 0 || target >= 5) {
          CHECK(br.empty());
        } else {
          REQUIRE(br.size() == 1);
          CHECK(br[0].first == target);
          CHECK(br[0].second == Rational(c));
        }
      }
  }

  TEST_CASE("weight-zero cohomology examples") {
    CHECK(ce::weight_zero_cohomology(ce::build_wx(real(1, 0), 4), 4).known_prefix(5) == Dims{1, 0, 0, 1, 0});
    CHECK(ce::weight_zero_cohomology(ce::build_wx(real(0, 1), 0), 2).known_prefix(3) == Dims{1, 1, 0});
    const auto oracle = ce::weight_zero_cohomology(ce::build_wx(complex(1, {1}), 5), 5).known_prefix(6);
    const auto w = weil::weil_algebra(
        weil::LieProduct({weil::make_factor(weil::FactorKind::GlComplex, 1), weil::make_factor(weil::FactorKind::GlComplex, 1)}),
        2);
    CHECK(oracle == gca::cdga_cohomology(w, 5).known_prefix(6));
  }

  TEST_CASE("insufficient weight windows are rejected") {
    CHECK_THROWS_AS(ce::weight_zero_cohomology(ce::build_wx(real(1, 0), 2), 4), InputError);
    CHECK_THROWS_AS(ce::build_wx(real(1, 0), -2), InputError);
  }

  TEST_CASE("weight-zero cohomology is stable in the window") {
    for (const auto& d : {real(1, 0), real(1, 1), complex(1, {1}), real(0, 0, {1})}) {
      const auto base = ce::weight_zero_cohomology(ce::build_wx(d, 4), 4).known_prefix(5);
      CHECK(ce::weight_zero_cohomology(ce::build_wx(d, 6), 4).known_prefix(5) == base);
    }
  }
}
