#include "doctest.h"

#include <random>

#include "gfc/decomposition.hpp"
#include "gfc/errors.hpp"

using namespace gfc;
using rep::Matrix;

namespace {

Matrix ints(std::vector<std::vector<long>> rows) {
  Matrix m;
  for (auto& r : rows) {
    linalg::Vector v;
    for (long x : r) v.push_back(Rational(x));
    m.push_back(v);
  }
  return m;
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  Matrix m(n, linalg::Vector(n));
  std::size_t o = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) m[o + i][o + j] = b[i][j];
    o += b.size();
  }
  return m;
}

// Companion matrix of the 5th cyclotomic polynomial: eigenvalues the primitive 5th roots of unity.
Matrix cyclotomic5() { return ints({{0, 0, 0, -1}, {1, 0, 0, -1}, {0, 1, 0, -1}, {0, 0, 1, -1}}); }
Matrix quarter_turn() { return ints({{0, -1}, {1, 0}}); }
Matrix third_turn() { return ints({{0, -1}, {1, -1}}); }

Matrix random_conjugate(const Matrix& g, std::mt19937_64& rng) {
  const std::size_t n = g.size();
  Matrix h = rep::identity_matrix(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int s = 0; s < 4 * static_cast<int>(n); ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const Rational k(c(rng));
    for (std::size_t t = 0; t < n; ++t) h[i][t] += k * h[j][t];
  }
  return rep::multiply(rep::multiply(h, g), rep::inverse(h));
}

rep::Factor factor(std::string label, std::size_t m, std::size_t dim) { return {std::move(label), m, dim}; }

}  // namespace

TEST_SUITE("rep-decomp") {
  TEST_CASE("complex cyclic examples") {
    const auto a = rep::decompose_complex(3, {0, 1});
    CHECK(a.dimV0 == 1);
    CHECK(a.factors == std::vector<rep::Factor>{factor("1", 1, 1)});
    const auto b = rep::decompose_complex(7, {0, 0, 0});
    CHECK(b.dimV0 == 3);
    CHECK(b.factors.empty());
    const auto c = rep::decompose_complex(5, {1, 1, 2});
    CHECK(c.dimV0 == 0);
    CHECK(c.factors == std::vector<rep::Factor>{factor("1", 2, 1), factor("2", 1, 1)});
    CHECK(rep::decompose_complex(5, {6, -4}).factors == std::vector<rep::Factor>{factor("1", 2, 1)});
  }

  TEST_CASE("real cyclic examples") {
    const auto a = rep::decompose_real_cyclic(2, ints({{-1}}));
    CHECK(a.dimV0 == 0);
    CHECK(a.mMinus1 == 1);
    CHECK(a.factors.empty());
    const auto b = rep::decompose_real_cyclic(4, quarter_turn());
    CHECK(b.dimV0 == 0);
    CHECK(b.mMinus1 == 0);
    CHECK(b.factors == std::vector<rep::Factor>{factor("1", 1, 2)});
    const auto c = rep::decompose_real_cyclic(2, ints({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
    CHECK(c.dimV0 == 1);
    CHECK(c.mMinus1 == 2);
    const auto d = rep::decompose_real_cyclic(5, cyclotomic5());
    CHECK(d.factors == std::vector<rep::Factor>{factor("1", 1, 2), factor("2", 1, 2)});
  }

  TEST_CASE("block data canonicalizes rotation labels") {
    rep::RealBlocks blocks;
    blocks.plus1 = 1;
    blocks.rotations = {1, 4, 2, 3};  // k and 5 - k name the same real irreducible
    const auto d = rep::decompose_real_cyclic(5, blocks);
    CHECK(d.dimV0 == 1);
    CHECK(d.factors == std::vector<rep::Factor>{factor("1", 2, 2), factor("2", 2, 2)});
    rep::RealBlocks half;
    half.rotations = {1};
    CHECK(rep::decompose_real_cyclic(2, half).mMinus1 == 2);
  }

  TEST_CASE("wrong generator orders are rejected") {
    CHECK_THROWS_AS(rep::decompose_real_cyclic(8, quarter_turn()), InputError);
    CHECK_THROWS_AS(rep::decompose_real_cyclic(2, quarter_turn()), InputError);
    rep::RealBlocks b;
    b.rotations = {2};
    CHECK_THROWS_AS(rep::decompose_real_cyclic(12, b), InputError);
  }

  TEST_CASE("decomposition bookkeeping and validation") {
    const auto d = rep::decompose_real_cyclic(12, block_diag({ints({{1}}), ints({{-1}}), quarter_turn(), third_turn()}));
    CHECK(d.ambient_dim() == 6);
    CHECK(d.dimV0 == 1);
    CHECK(d.mMinus1 == 1);
    CHECK(d.factors.size() == 2);
    rep::Decomposition bad;
    bad.field = rep::Field::Real;
    bad.factors = {factor("1", 1, 2), factor("1", 1, 2)};
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad.factors = {factor("1", 0, 2)};
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad.factors = {factor("1", 1, 1)};
    CHECK_THROWS_AS(bad.validate(), InputError);
    rep::Decomposition cx;
    cx.field = rep::Field::Complex;
    cx.mMinus1 = 1;
    CHECK_THROWS_AS(cx.validate(), InputError);
  }

  TEST_CASE("decomposition is invariant under rational change of basis") {
    std::mt19937_64 rng(5);
    const std::vector<std::pair<std::size_t, Matrix>> gens = {
        {4, block_diag({quarter_turn(), ints({{1}})})},
        {5, cyclotomic5()},
        {6, block_diag({third_turn(), ints({{-1}})})},
        {12, block_diag({quarter_turn(), third_turn(), ints({{-1}})})}};
    for (const auto& [n, g] : gens)
      for (int t = 0; t < 4; ++t) CHECK(rep::decompose_real_cyclic(n, random_conjugate(g, rng)) == rep::decompose_real_cyclic(n, g));
  }

  TEST_CASE("complexification refines the real decomposition") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> small(0, 2);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 7) * 2;  // even orders 2..14
      rep::RealBlocks b;
      b.plus1 = small(rng);
      b.minus1 = small(rng);
      std::vector<long long> weights(b.plus1, 0);
      for (std::size_t i = 0; i < b.minus1; ++i) weights.push_back(static_cast<long long>(n / 2));
      std::uniform_int_distribution<long long> k(1, static_cast<long long>(n) - 1);
      for (int r = small(rng); r > 0; --r) {
        const long long x = k(rng);
        if (2 * x == static_cast<long long>(n)) continue;
        b.rotations.push_back(x);
        weights.push_back(x);
        weights.push_back(static_cast<long long>(n) - x);
      }
      rep::Decomposition real;
      try {
        real = rep::decompose_real_cyclic(n, b);
      } catch (const InputError&) {
        continue;  // generated data of smaller order
      }
      CHECK(rep::complexify(real, n) == rep::decompose_complex(n, weights));
    }
  }

  TEST_CASE("inertia components of ±I on R^2") {
    rep::FiniteMatrixGroup g({rep::identity_matrix(2), ints({{-1, 0}, {0, -1}})});
    const auto comps = rep::inertia_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].fixed_dim == 2);
    CHECK(comps[0].decomposition.dimV0 == 2);
    CHECK(comps[1].fixed_dim == 0);
    CHECK(comps[1].decomposition.mMinus1 == 2);
  }

  TEST_CASE("inertia components of simple groups") {
    const auto trivial = rep::inertia_components(rep::FiniteMatrixGroup({rep::identity_matrix(3)}));
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].fixed_dim == 3);
    const Matrix r = third_turn();
    const auto c3 =
        rep::inertia_components(rep::FiniteMatrixGroup({rep::identity_matrix(2), r, rep::multiply(r, r)}), 2);
    REQUIRE(c3.size() == 3);
    for (std::size_t i = 1; i < 3; ++i) {
      CHECK(c3[i].fixed_dim == 0);
      CHECK(c3[i].decomposition.factors.size() == 1);
      CHECK(c3[i].class_size == 1);
    }
  }

  TEST_CASE("class equation for S3 on R^2") {
    const Matrix r = third_turn(), s = ints({{0, 1}, {1, 0}});
    std::vector<Matrix> elems = {rep::identity_matrix(2), r, rep::multiply(r, r), s, rep::multiply(s, r),
                                 rep::multiply(r, s)};
    rep::FiniteMatrixGroup g(elems);
    CHECK(!g.is_cyclic());
    std::size_t total = 0;
    for (const auto& c : rep::inertia_components(g)) {
      total += c.class_size;
      CHECK(c.class_size * c.centralizer_order == 6);
      CHECK(c.fixed_dim == c.decomposition.dimV0);
    }
    CHECK(total == 6);
    CHECK(!rep::has_quaternionic_constituent(g));
    CHECK_THROWS_AS(rep::decompose_real_group(g), InputError);
  }

  TEST_CASE("quaternionic constituents are rejected") {
    const Matrix i = ints({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
    const Matrix j = ints({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
    const Matrix k = rep::multiply(i, j);
    std::vector<Matrix> q8;
    for (const auto& x : {rep::identity_matrix(4), i, j, k})
      for (int sgn : {1, -1}) {
        Matrix y = x;
        for (auto& row : y)
          for (auto& e : row) e *= sgn;
        q8.push_back(y);
      }
    rep::FiniteMatrixGroup g(q8);
    CHECK(rep::has_quaternionic_constituent(g));
    CHECK_THROWS_AS(rep::decompose_real_group(g), QuaternionicError);
  }

  TEST_CASE("matrix lists that are not groups are rejected") {
    CHECK_THROWS_AS(rep::FiniteMatrixGroup({rep::identity_matrix(2), quarter_turn()}), InputError);
    CHECK_THROWS_AS(rep::FiniteMatrixGroup({ints({{1, 0}, {0, 0}})}), InputError);
  }

  TEST_CASE("cyclic matrix groups decompose through a generator") {
    const Matrix r = quarter_turn();
    rep::FiniteMatrixGroup g({rep::identity_matrix(2), r, rep::power(r, 2), rep::power(r, 3)});
    CHECK(g.is_cyclic());
    CHECK(rep::decompose_real_group(g) == rep::decompose_real_cyclic(4, r));
  }
}
