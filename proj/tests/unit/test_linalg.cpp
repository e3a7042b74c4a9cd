#include "doctest.h"

#include <random>

#include "gfc/decomposition.hpp"
#include "gfc/errors.hpp"
#include "gfc/gca.hpp"
#include "gfc/linalg.hpp"
#include "gfc/weil.hpp"

using namespace gfc;
using linalg::SparseMatrix;
using linalg::Vector;

namespace {

SparseMatrix dense(std::vector<std::vector<long>> rows) {
  std::vector<Vector> r;
  for (auto& row : rows) {
    Vector v;
    for (long x : row) v.push_back(Rational(x));
    r.push_back(v);
  }
  return SparseMatrix::from_dense(r);
}

bool annihilates(const SparseMatrix& m, const Vector& v) {
  for (const auto& x : m.apply(v))
    if (!is_zero(x)) return false;
  return true;
}

// Random unimodular integer matrix (product of elementary operations) and its inverse.
std::pair<rep::Matrix, rep::Matrix> unimodular(std::size_t n, std::mt19937_64& rng) {
  rep::Matrix t = rep::identity_matrix(n);
  if (n < 2) return {t, t};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const Rational c(coeff(rng));
    for (std::size_t k = 0; k < n; ++k) t[i][k] += c * t[j][k];
  }
  return {t, rep::inverse(t)};
}

SparseMatrix to_sparse_matrix(const rep::Matrix& m) { return SparseMatrix::from_dense(m); }

}  // namespace

TEST_SUITE("exact-linalg") {
  TEST_CASE("rationals stay in lowest terms") {
    const Rational a = parse_rational("-6/4");
    CHECK(to_string(a) == "-3/2");
    CHECK(to_string(parse_rational("10/5")) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("1.5"), InputError);
  }

  TEST_CASE("rank examples") {
    CHECK(linalg::rank(SparseMatrix::identity(3)) == 3);
    CHECK(linalg::rank(SparseMatrix(2, 2)) == 0);
    CHECK(linalg::rank(dense({{1, 2}, {2, 4}})) == 1);
  }

  TEST_CASE("kernel examples") {
    CHECK(linalg::kernel_basis(SparseMatrix::identity(2)).empty());
    const auto k = linalg::kernel_basis(dense({{1, -1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == k[0][1]);
    CHECK(!is_zero(k[0][0]));
    const auto z = linalg::kernel_basis(SparseMatrix(2, 2));
    REQUIRE(z.size() == 2);
    CHECK(linalg::rank(SparseMatrix::from_dense(z)) == 2);
  }

  TEST_CASE("rank plus nullity equals columns on random matrices") {
    std::mt19937_64 rng(20261014);
    std::uniform_int_distribution<int> size(1, 7), entry(-3, 3), sparsity(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t rows = size(rng), cols = size(rng);
      std::vector<Vector> m(rows, Vector(cols));
      for (auto& row : m)
        for (auto& x : row) x = sparsity(rng) == 0 ? Rational(entry(rng)) : Rational(0);
      const SparseMatrix s = SparseMatrix::from_dense(m);
      const auto k = linalg::kernel_basis(s);
      CHECK(linalg::rank(s) + k.size() == cols);
      for (const auto& v : k) CHECK(annihilates(s, v));
    }
  }

  TEST_CASE("sparse matrices are canonical") {
    const auto m = SparseMatrix::from_entries(2, 2, {{1, 1, Rational(2)}, {0, 1, Rational(1)}, {1, 1, Rational(-2)}});
    REQUIRE(m.nonzeros() == 1);
    CHECK(m.entries()[0].row == 0);
    CHECK(m.entries()[0].col == 1);
    CHECK_THROWS(SparseMatrix::from_entries(2, 2, {{2, 0, Rational(1)}}));
  }

  TEST_CASE("cohomology_dims examples") {
    const auto zero = linalg::cohomology_dims(linalg::ChainComplexSlice({1, 1}, {SparseMatrix(1, 1)}));
    CHECK(zero.at(0) == 1);
    CHECK(!zero.at(1).has_value());
    const auto exact = linalg::cohomology_dims(linalg::ChainComplexSlice({1, 1}, {SparseMatrix::identity(1)}));
    CHECK(exact.at(0) == 0);
    CHECK(!exact.at(1).has_value());
    // 1, y, c, yc with dy = c: the classical H(W_1).
    const auto gv = linalg::cohomology_dims(linalg::ChainComplexSlice(
        {1, 1, 1, 1, 0}, {SparseMatrix(1, 1), SparseMatrix::identity(1), SparseMatrix(1, 1), SparseMatrix(0, 1)}));
    CHECK(gv.known_prefix(4) == std::vector<std::size_t>{1, 0, 0, 1});
  }

  TEST_CASE("complexes violating d^2 = 0 are rejected") {
    CHECK_THROWS_AS(linalg::ChainComplexSlice({1, 1, 1}, {SparseMatrix::identity(1), SparseMatrix::identity(1)}),
                    InvariantViolation);
    CHECK_THROWS(linalg::ChainComplexSlice({1, 2}, {SparseMatrix::identity(1)}));
  }

  TEST_CASE("cohomology_dims is invariant under unimodular changes of basis") {
    std::mt19937_64 rng(7);
    const auto w = gca::FreeGCA(weil::weil_algebra(
        weil::LieProduct({weil::make_factor(weil::FactorKind::GlReal, 1), weil::make_factor(weil::FactorKind::GlReal, 1)}),
        2));
    const int top = 6;
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix> ds;
    for (int q = 0; q <= top; ++q) dims.push_back(w.monomial_basis(q).size());
    for (int q = 0; q < top; ++q) ds.push_back(w.differential_matrix(q));
    const auto reference = linalg::cohomology_dims(linalg::ChainComplexSlice(dims, ds));
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<rep::Matrix> t, tinv;
      for (int q = 0; q <= top; ++q) {
        auto [a, b] = unimodular(dims[q], rng);
        t.push_back(a);
        tinv.push_back(b);
      }
      std::vector<SparseMatrix> moved;
      for (int q = 0; q < top; ++q) {
        const SparseMatrix left = dims[q + 1] ? to_sparse_matrix(t[q + 1]) : SparseMatrix(0, 0);
        const SparseMatrix right = dims[q] ? to_sparse_matrix(tinv[q]) : SparseMatrix(0, 0);
        moved.push_back(left * ds[q] * right);
      }
      const auto b = linalg::cohomology_dims(linalg::ChainComplexSlice(dims, moved));
      CHECK(b.betti == reference.betti);
    }
  }

  TEST_CASE("representatives are cocycles") {
    const auto c = linalg::ChainComplexSlice({1, 2, 1}, {SparseMatrix(2, 1), dense({{1, -1}})});
    const auto b = linalg::cohomology_dims(c, true);
    CHECK(b.at(0) == 1);
    CHECK(b.at(1) == 1);
    REQUIRE(b.representatives.size() >= 2);
    REQUIRE(b.representatives[1].size() == 1);
    CHECK(annihilates(c.differentials()[1], b.representatives[1][0]));
  }
}
