#include "gfc/gca.hpp"

#include <algorithm>
#include <functional>

#include "gfc/errors.hpp"
#include "gfc/parallel.hpp"

namespace gfc::gca {

using linalg::SparseMatrix;
using linalg::SparseVector;

void add_scaled(Element& x, const Rational& c, const Element& y) {
  if (is_zero(c)) return;
  for (const auto& [m, v] : y) {
    auto [it, inserted] = x.try_emplace(m, 0);
    it->second += c * v;
    if (is_zero(it->second)) x.erase(it);
  }
}

FreeGCA::FreeGCA(std::vector<GeneratorSpec> generators, std::optional<int> truncation_bound,
                 std::vector<Element> differential)
    : generators_(std::move(generators)), bound_(truncation_bound), differential_(std::move(differential)) {
  ensure(differential_.size() == generators_.size(), "one differential image per generator required");
  ensure(generators_.size() < 256, "too many generators");
  for (const auto& g : generators_) {
    ensure(g.degree > 0, "generator '" + g.name + "' must have positive degree");
    ensure(g.filtration_weight >= 0, "generator '" + g.name + "' has negative filtration weight");
  }
  ensure(!bound_ || *bound_ >= 0, "truncation bound must be non-negative");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    Element reduced;
    for (const auto& [m, c] : differential_[i]) {
      ensure(m.size() == generators_.size(), "differential image has the wrong monomial length");
      ensure(degree(m) == generators_[i].degree + 1, "d(" + generators_[i].name + ") is not of degree +1");
      ensure(filtration(m) >= generators_[i].filtration_weight,
             "d(" + generators_[i].name + ") lowers the filtration weight");
      if (survives(m) && !is_zero(c)) reduced[m] = c;
    }
    differential_[i] = std::move(reduced);
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (bound_ && generators_[i].filtration_weight > *bound_) continue;
    const Element dd = apply_differential(differential_[i]);
    ensure(dd.empty(), "d(d(" + generators_[i].name + ")) = " + format(dd) + " != 0");
  }
}

int FreeGCA::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * generators_[i].degree;
  return d;
}

int FreeGCA::filtration(const Monomial& m) const {
  int f = 0;
  for (std::size_t i = 0; i < m.size(); ++i) f += m[i] * generators_[i].filtration_weight;
  return f;
}

bool FreeGCA::survives(const Monomial& m) const {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (generators_[i].odd() && m[i] > 1) return false;
  return !bound_ || filtration(m) <= *bound_;
}

std::string FreeGCA::format(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += generators_[i].name;
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string FreeGCA::format(const Element& x) const {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : x) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")" + format(m);
  }
  return out;
}

Element FreeGCA::one() const { return {{unit_monomial(), Rational(1)}}; }

Element FreeGCA::generator_element(std::size_t i) const {
  Monomial m = unit_monomial();
  m.at(i) = 1;
  return from_monomial(m);
}

Element FreeGCA::from_monomial(const Monomial& m, const Rational& c) const {
  if (!survives(m) || is_zero(c)) return {};
  return {{m, c}};
}

std::optional<std::pair<int, Monomial>> FreeGCA::multiply(const Monomial& u, const Monomial& v) const {
  Monomial w(u.size());
  int sign = 1;
  int odd_in_u_after = 0;  // odd generators of u with index > current j, scanning j downward
  for (std::size_t j = u.size(); j-- > 0;) {
    const unsigned e = static_cast<unsigned>(u[j]) + v[j];
    if (e > 255) throw InvariantViolation("exponent overflow in monomial product");
    w[j] = static_cast<std::uint8_t>(e);
    if (generators_[j].odd()) {
      if (e > 1) return std::nullopt;
      if (v[j] && (odd_in_u_after % 2)) sign = -sign;
      if (u[j]) ++odd_in_u_after;
    }
  }
  if (bound_ && filtration(w) > *bound_) return std::nullopt;
  return std::pair{sign, std::move(w)};
}

Element FreeGCA::multiply(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [u, a] : x)
    for (const auto& [v, b] : y) {
      auto p = multiply(u, v);
      if (!p) continue;
      auto [it, inserted] = out.try_emplace(std::move(p->second), 0);
      if (p->first > 0)
        it->second += a * b;
      else
        it->second -= a * b;
      if (is_zero(it->second)) out.erase(it);
    }
  return out;
}

Element FreeGCA::apply_derivation_monomial(const std::vector<Element>& images, bool odd, const Monomial& m) const {
  Element out;
  int prefix_degree = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    // prefix * g_i^{e-1} * D(g_i) * suffix, with the sign of D passing the prefix.
    Monomial left(m.size(), 0);
    Monomial right(m.size(), 0);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k < i) left[k] = m[k];
      if (k > i) right[k] = m[k];
    }
    left[i] = static_cast<std::uint8_t>(m[i] - 1);
    Rational factor(m[i]);
    if (odd && (prefix_degree % 2)) factor = -factor;
    Element term = multiply(multiply(from_monomial(left), images.at(i)), from_monomial(right));
    add_scaled(out, factor, term);
    prefix_degree += m[i] * generators_[i].degree;
  }
  return out;
}

Element FreeGCA::apply_derivation(const std::vector<Element>& images, bool odd, const Element& x) const {
  ensure(images.size() == generators_.size(), "derivation needs one image per generator");
  Element out;
  for (const auto& [m, c] : x) add_scaled(out, c, apply_derivation_monomial(images, odd, m));
  return out;
}

Element FreeGCA::apply_differential(const Element& x) const { return apply_derivation(differential_, true, x); }

Element FreeGCA::apply_morphism(const std::vector<Element>& images, const Element& x) const {
  ensure(images.size() == generators_.size(), "algebra map needs one image per generator");
  Element out;
  for (const auto& [m, c] : x) {
    Element acc = one();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) acc = multiply(acc, images[i]);
    add_scaled(out, c, acc);
  }
  return out;
}

std::vector<Monomial> FreeGCA::monomial_basis(int degree) const {
  return monomial_basis(degree, std::vector<bool>(generators_.size(), true));
}

std::vector<Monomial> FreeGCA::monomial_basis(int degree, const std::vector<bool>& allowed) const {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial m = unit_monomial();
  const int limit = bound_.value_or(-1);
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int remaining, int fw) {
    if (remaining == 0) {
      out.push_back(m);
      return;
    }
    if (i == generators_.size()) return;
    const auto& g = generators_[i];
    int max_e = allowed[i] ? remaining / g.degree : 0;
    if (g.odd()) max_e = std::min(max_e, 1);
    for (int e = 0; e <= max_e; ++e) {
      const int f = fw + e * g.filtration_weight;
      if (limit >= 0 && f > limit) break;
      m[i] = static_cast<std::uint8_t>(e);
      rec(i + 1, remaining - e * g.degree, f);
    }
    m[i] = 0;
  };
  rec(0, degree, 0);
  std::sort(out.begin(), out.end());
  return out;
}

SparseMatrix FreeGCA::matrix_of(int q, bool graded_only) const {
  const auto src = monomial_basis(q);
  const auto dst = monomial_basis(q + 1);
  std::vector<linalg::Entry> entries;
  for (std::size_t j = 0; j < src.size(); ++j) {
    const Element image = apply_differential(from_monomial(src[j]));
    const int fw = filtration(src[j]);
    for (const auto& [m, c] : image) {
      if (graded_only && filtration(m) != fw) continue;
      auto it = std::lower_bound(dst.begin(), dst.end(), m);
      ensure(it != dst.end() && *it == m, "differential image outside the monomial basis");
      entries.push_back({static_cast<std::size_t>(it - dst.begin()), j, c});
    }
  }
  return SparseMatrix::from_entries(dst.size(), src.size(), std::move(entries));
}

SparseMatrix FreeGCA::differential_matrix(int q) const { return matrix_of(q, false); }
SparseMatrix FreeGCA::graded_differential_matrix(int q) const { return matrix_of(q, true); }

SparseVector coordinates(const Element& x, const std::vector<Monomial>& basis) {
  SparseVector v;
  for (const auto& [m, c] : x) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    ensure(it != basis.end() && *it == m, "element has a monomial outside the given basis");
    v.emplace_back(static_cast<std::uint32_t>(it - basis.begin()), c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

Element element_from(const SparseVector& v, const std::vector<Monomial>& basis) {
  Element x;
  for (const auto& [i, c] : v) x[basis.at(i)] = c;
  return x;
}

namespace {

linalg::BettiTable complex_cohomology(const FreeGCA& a, int max_degree, bool graded, bool reps, unsigned jobs) {
  require(max_degree >= 0, "maxDegree must be non-negative");
  const std::size_t top = static_cast<std::size_t>(max_degree) + 1;
  std::vector<std::size_t> dims(top + 1);
  std::vector<SparseMatrix> ds(top);
  parallel_for(top + 1, jobs, [&](std::size_t q) {
    dims[q] = a.monomial_basis(static_cast<int>(q)).size();
    if (q < top)
      ds[q] = graded ? a.graded_differential_matrix(static_cast<int>(q)) : a.differential_matrix(static_cast<int>(q));
  });
  return linalg::cohomology_dims(linalg::ChainComplexSlice(std::move(dims), std::move(ds)), reps, jobs);
}

}  // namespace

linalg::BettiTable cdga_cohomology(const FreeGCA& a, int max_degree, bool with_representatives, unsigned jobs) {
  return complex_cohomology(a, max_degree, false, with_representatives, jobs);
}

linalg::BettiTable associated_graded_cohomology(const FreeGCA& a, int max_degree, unsigned jobs) {
  return complex_cohomology(a, max_degree, true, false, jobs);
}

linalg::BettiTable subcomplex_cohomology(const FreeGCA& a, const Subcomplex& s, bool with_representatives,
                                         unsigned jobs) {
  ensure(!s.basis.empty() && s.basis.size() == s.monomials.size(), "malformed subcomplex");
  const std::size_t top = s.basis.size() - 1;
  std::vector<std::size_t> dims(top + 1);
  for (std::size_t q = 0; q <= top; ++q) dims[q] = s.basis[q].size();
  std::vector<SparseMatrix> ds(top);
  parallel_for(top, jobs, [&](std::size_t q) {
    const auto& target = s.basis[q + 1];
    std::vector<SparseVector> columns;
    columns.reserve(s.basis[q].size());
    for (const auto& b : s.basis[q]) {
      const Element image = a.apply_differential(element_from(b, s.monomials[q]));
      SparseVector w = coordinates(image, s.monomials[q + 1]);
      // RREF rows: the coordinate on row i is w at that row's pivot.
      SparseVector coords;
      SparseVector residual = w;
      for (std::size_t i = 0; i < target.size(); ++i) {
        const auto pivot = target[i].front().first;
        auto it = std::lower_bound(w.begin(), w.end(), pivot,
                                   [](const auto& e, std::uint32_t key) { return e.first < key; });
        if (it == w.end() || it->first != pivot) continue;
        coords.emplace_back(static_cast<std::uint32_t>(i), it->second);
        linalg::axpy(residual, -it->second, target[i]);
      }
      ensure(residual.empty(), "subcomplex is not closed under d in degree " + std::to_string(q));
      columns.push_back(std::move(coords));
    }
    ds[q] = SparseMatrix::from_columns(target.size(), columns);
  });
  return linalg::cohomology_dims(linalg::ChainComplexSlice(std::move(dims), std::move(ds)), with_representatives,
                                 jobs);
}

std::vector<std::size_t> hilbert_series(const FreeGCA& a, int max_degree) {
  std::vector<std::size_t> out;
  for (int q = 0; q <= max_degree; ++q) out.push_back(a.monomial_basis(q).size());
  return out;
}

}  // namespace gfc::gca
