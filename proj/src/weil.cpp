#include "gfc/weil.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gfc/ce_engine.hpp"
#include "gfc/decomposition.hpp"
#include "gfc/errors.hpp"
#include "gfc/parallel.hpp"

namespace gfc::weil {

using gca::Element;
using gca::FreeGCA;
using gca::Monomial;
using linalg::SparseVector;
using linalg::Vector;

std::string to_string(FactorKind k) {
  switch (k) {
    case FactorKind::GlReal: return "gl_real";
    case FactorKind::GlComplex: return "gl_complex";
    case FactorKind::Bgl: return "bgl";
    case FactorKind::OReal: return "o_real";
    case FactorKind::U: return "u";
  }
  return "?";
}

std::string LieFactor::label() const { return to_string(kind) + "(" + std::to_string(n) + ")"; }

LieFactor make_factor(FactorKind kind, std::size_t n) {
  switch (kind) {
    case FactorKind::GlReal:
    case FactorKind::GlComplex: return {kind, n, lie::gl(n)};
    case FactorKind::Bgl: return {kind, n, lie::bgl(n)};
    case FactorKind::OReal: return {kind, n, lie::subalgebra(lie::gl(n), lie::o_span(n))};
    case FactorKind::U: return {kind, n, lie::subalgebra(lie::bgl(n), lie::u_span(n))};
  }
  throw InputError("unknown factor kind");
}

namespace {

std::vector<lie::LieAlgebra> algebras_of(const std::vector<LieFactor>& fs) {
  std::vector<lie::LieAlgebra> out;
  for (const auto& f : fs) out.push_back(f.algebra);
  return out;
}

}  // namespace

LieProduct::LieProduct(std::vector<LieFactor> factors)
    : factors_(std::move(factors)), algebra_(lie::direct_sum(algebras_of(factors_))) {
  std::size_t off = 0;
  for (const auto& f : factors_) {
    offsets_.push_back(off);
    off += f.algebra.dim();
  }
}

std::string LieProduct::label() const {
  std::string s;
  for (const auto& f : factors_) s += (s.empty() ? "" : "+") + f.label();
  return s.empty() ? "0" : s;
}

FreeGCA weil_algebra(const lie::LieAlgebra& g, std::optional<int> bound) {
  if (bound) require(*bound >= 0 && *bound % 2 == 0, "truncation bound must be even and non-negative");
  const std::size_t n = g.dim();
  std::vector<gca::GeneratorSpec> gens;
  for (std::size_t a = 0; a < n; ++a) gens.push_back({"y_" + g.basis()[a].symbol, 1, 0});
  for (std::size_t a = 0; a < n; ++a) gens.push_back({"c_" + g.basis()[a].symbol, 2, 2});
  std::vector<Element> d(2 * n);
  auto mono = [&](std::initializer_list<std::size_t> idx) {
    Monomial m(2 * n, 0);
    for (auto i : idx) ++m[i];
    return m;
  };
  for (std::size_t a = 0; a < n; ++a) d[a][mono({n + a})] += 1;
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [a, coeff] : g.bracket(b, c)) {
        // 1/2 C^a_{bc} y_b y_c summed over all b, c equals the sum over b < c
        if (b < c) d[a][mono({b, c})] += coeff;
        d[n + a][mono({b, n + c})] += coeff;
      }
  for (auto& e : d)
    for (auto it = e.begin(); it != e.end();) it = is_zero(it->second) ? e.erase(it) : std::next(it);
  return FreeGCA(std::move(gens), bound, std::move(d));
}

FreeGCA weil_algebra(const LieProduct& g, std::optional<int> bound) { return weil_algebra(g.algebra(), bound); }

Rational evaluate(const FreeGCA& w, const Element& x, const std::vector<std::size_t>& wedge_args,
                  const std::vector<std::size_t>& sym_args) {
  const std::size_t n = w.num_generators() / 2;
  // Wedge arguments: sign of the sorting permutation, or zero on repeats.
  std::vector<std::size_t> sorted_wedge = wedge_args;
  int sign = 1;
  for (std::size_t i = 0; i < sorted_wedge.size(); ++i)
    for (std::size_t j = 0; j + 1 < sorted_wedge.size() - i; ++j)
      if (sorted_wedge[j] > sorted_wedge[j + 1]) {
        std::swap(sorted_wedge[j], sorted_wedge[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 1; i < sorted_wedge.size(); ++i)
    if (sorted_wedge[i] == sorted_wedge[i - 1]) return 0;
  Monomial target(2 * n, 0);
  for (auto a : sorted_wedge) target[a] = 1;
  for (auto b : sym_args) ++target[n + b];
  auto it = x.find(target);
  if (it == x.end()) return 0;
  Rational permanent = 1;
  for (std::size_t b = 0; b < n; ++b)
    for (int k = 2; k <= target[n + b]; ++k) permanent *= k;
  return sign * permanent * it->second;
}

namespace {

void increasing_tuples(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                       const std::function<void()>& f) {
  if (cur.size() == k) {
    f();
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    increasing_tuples(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

void nondecreasing_tuples(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                          const std::function<void()>& f) {
  if (cur.size() == k) {
    f();
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    nondecreasing_tuples(n, k, i, cur, f);
    cur.pop_back();
  }
}

template <typename T>
std::vector<T> without(const std::vector<T>& v, std::size_t skip1, std::size_t skip2 = SIZE_MAX) {
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != skip1 && i != skip2) out.push_back(v[i]);
  return out;
}

}  // namespace

std::size_t verify_weil_differential(const lie::LieAlgebra& g, int max_degree) {
  const FreeGCA w = weil_algebra(g, std::nullopt);
  const std::size_t n = g.dim();
  std::size_t checks = 0;
  for (int q = 0; q <= max_degree; ++q) {
    for (const auto& m : w.monomial_basis(q)) {
      const Element psi = w.from_monomial(m);
      const Element dpsi = w.apply_differential(psi);
      for (int i = q + 1; i >= 0; i -= 2) {
        const std::size_t wi = static_cast<std::size_t>(i);
        const std::size_t sj = static_cast<std::size_t>((q + 1 - i) / 2);
        std::vector<std::size_t> gs, hs;
        increasing_tuples(n, wi, 0, gs, [&] {
          nondecreasing_tuples(n, sj, 0, hs, [&] {
            Rational rhs = 0;
            // Curvature term: h_t is fed into the first wedge slot (the Leibniz-consistent position).
            for (std::size_t t = 0; t < sj; ++t) {
              std::vector<std::size_t> wedge{hs[t]};
              wedge.insert(wedge.end(), gs.begin(), gs.end());
              rhs += evaluate(w, psi, wedge, without(hs, t));
            }
            // Coadjoint term on the symmetric part: [g_s, h_t] replaces h_t.
            for (std::size_t s = 0; s < wi; ++s)
              for (std::size_t t = 0; t < sj; ++t)
                for (const auto& [k, c] : g.bracket(gs[s], hs[t])) {
                  auto sym = without(hs, t);
                  sym.push_back(k);
                  const Rational v = c * evaluate(w, psi, without(gs, s), sym);
                  rhs += (s % 2 == 0) ? v : Rational(-v);
                }
            // Chevalley-Eilenberg term.
            for (std::size_t s1 = 0; s1 < wi; ++s1)
              for (std::size_t s2 = s1 + 1; s2 < wi; ++s2)
                for (const auto& [k, c] : g.bracket(gs[s1], gs[s2])) {
                  std::vector<std::size_t> wedge{k};
                  for (auto x : without(gs, s1, s2)) wedge.push_back(x);
                  // 1-based exponent s1 + s2 - 1 equals 0-based s1 + s2 + 1
                  const Rational v = c * evaluate(w, psi, wedge, hs);
                  rhs += ((s1 + s2 + 1) % 2 == 0) ? v : Rational(-v);
                }
            const Rational lhs = evaluate(w, dpsi, gs, hs);
            ++checks;
            if (lhs != rhs)
              throw InvariantViolation("d_W mismatch on " + w.format(m) + ": generator form gives " + gfc::to_string(lhs) +
                                       ", three-sum formula gives " + gfc::to_string(rhs));
          });
        });
      }
    }
  }
  return checks;
}

namespace {

/// Images of the contraction i_X (X = basis vector beta) on generators.
std::vector<Element> contraction_images(const FreeGCA& w, std::size_t beta) {
  std::vector<Element> images(w.num_generators());
  images[beta] = w.one();
  return images;
}

std::vector<Element> lie_derivative_images(const FreeGCA& w, std::size_t beta) {
  const auto iota = contraction_images(w, beta);
  std::vector<Element> images;
  for (const auto& dg : w.differential_on_generators()) images.push_back(w.apply_derivation(iota, true, dg));
  return images;
}

}  // namespace

RelativeWeil relative_weil(const lie::LieAlgebra& g, const std::vector<SparseVector>& k_span,
                           const std::vector<std::vector<Vector>>& automorphisms, std::optional<int> bound,
                           int max_degree, unsigned jobs) {
  require(max_degree >= 0, "maxDegree must be non-negative");
  if (bound) require(*bound >= 0 && *bound % 2 == 0, "truncation bound must be even and non-negative");
  const std::size_t n = g.dim();
  const auto k_rows = linalg::reduced_row_echelon(k_span);
  for (const auto& a : k_rows)
    for (const auto& b : k_rows)
      if (!lie::coordinates_in_span(k_rows, g.bracket(a, b), n))
        throw InputError("subalgebra is not closed under the bracket");
  const std::size_t r = k_rows.size();

  // Adapted basis: k first, then the standard vectors of the non-pivot columns.
  std::vector<SparseVector> adapted_basis = k_rows;
  std::vector<std::string> symbols;
  std::vector<bool> pivot(n, false);
  for (std::size_t i = 0; i < r; ++i) {
    pivot[k_rows[i].front().first] = true;
    symbols.push_back("k" + std::to_string(i));
  }
  for (std::size_t c = 0; c < n; ++c)
    if (!pivot[c]) {
      adapted_basis.push_back({{static_cast<std::uint32_t>(c), Rational(1)}});
      symbols.push_back(g.basis()[c].symbol);
    }
  lie::LieAlgebra adapted = r == 0 ? g : lie::subalgebra(g, adapted_basis, symbols);
  FreeGCA w = weil_algebra(adapted, bound);

  std::vector<std::vector<Element>> lie_derivs;
  for (std::size_t beta = 0; beta < r; ++beta) lie_derivs.push_back(lie_derivative_images(w, beta));

  // Automorphisms in the adapted basis: M = P^{-1} A P, pulled back to covectors.
  rep::Matrix p(n, Vector(n));
  for (std::size_t col = 0; col < n; ++col)
    for (const auto& [row, x] : adapted_basis[col]) p[row][col] = x;
  const rep::Matrix p_inv = rep::inverse(p);
  std::vector<std::vector<Element>> morphisms;
  for (const auto& a : automorphisms) {
    require(a.size() == n, "automorphism matrix has the wrong size");
    const rep::Matrix m = rep::multiply(rep::multiply(p_inv, a), p);
    for (std::size_t alpha = r; alpha < n; ++alpha)
      for (std::size_t beta = 0; beta < r; ++beta)
        require(is_zero(m[alpha][beta]), "automorphism does not preserve the subalgebra");
    std::vector<Element> images(2 * n);
    for (std::size_t alpha = 0; alpha < n; ++alpha)
      for (std::size_t beta = 0; beta < n; ++beta) {
        if (is_zero(m[alpha][beta])) continue;
        gca::add_scaled(images[alpha], m[alpha][beta], w.generator_element(beta));
        gca::add_scaled(images[n + alpha], m[alpha][beta], w.generator_element(n + beta));
      }
    morphisms.push_back(std::move(images));
  }

  std::vector<bool> allowed(2 * n, true);
  for (std::size_t beta = 0; beta < r; ++beta) allowed[beta] = false;

  const std::size_t top = static_cast<std::size_t>(max_degree) + 1;
  gca::Subcomplex complex;
  complex.monomials.resize(top + 1);
  complex.basis.resize(top + 1);
  parallel_for(top + 1, jobs, [&](std::size_t q) {
    const auto horizontal = w.monomial_basis(static_cast<int>(q), allowed);
    std::map<int, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < horizontal.size(); ++i) blocks[w.filtration(horizontal[i])].push_back(i);
    std::vector<SparseVector> basis;
    for (const auto& [fw, members] : blocks) {
      std::vector<Monomial> block;
      for (auto i : members) block.push_back(horizontal[i]);
      std::vector<linalg::SparseMatrix> rows;
      auto add_operator = [&](const std::function<Element(const Element&)>& op) {
        std::vector<SparseVector> columns;
        for (const auto& mono : block) columns.push_back(gca::coordinates(op(w.from_monomial(mono)), block));
        rows.push_back(linalg::SparseMatrix::from_columns(block.size(), columns));
      };
      for (const auto& images : lie_derivs)
        add_operator([&](const Element& x) { return w.apply_derivation(images, false, x); });
      for (const auto& images : morphisms)
        add_operator([&](const Element& x) {
          Element y = w.apply_morphism(images, x);
          gca::add_scaled(y, Rational(-1), x);
          return y;
        });
      for (auto& v : linalg::kernel_basis_sparse(linalg::stack_rows(rows, block.size()))) {
        for (auto& [i, c] : v) i = static_cast<std::uint32_t>(members[i]);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        basis.push_back(std::move(v));
      }
    }
    complex.monomials[q] = horizontal;
    complex.basis[q] = linalg::reduced_row_echelon(std::move(basis));
  });
  return RelativeWeil{std::move(adapted), r, std::move(w), std::move(complex)};
}

RelativeWeil relative_weil(const LieProduct& g, const SubalgebraSpec& k, std::optional<int> bound, int max_degree,
                           unsigned jobs) {
  require(k.per_factor.size() == g.factors().size(), "subalgebra spec needs one entry per factor");
  const std::size_t n = g.dim();
  std::vector<SparseVector> span;
  std::vector<std::vector<Vector>> automorphisms;
  auto shifted = [](std::vector<SparseVector> vs, std::size_t off) {
    for (auto& v : vs)
      for (auto& [i, c] : v) i = static_cast<std::uint32_t>(i + off);
    return vs;
  };
  for (std::size_t f = 0; f < g.factors().size(); ++f) {
    const auto& factor = g.factors()[f];
    const std::size_t off = g.offset(f);
    const std::size_t fdim = factor.algebra.dim();
    auto kind = k.per_factor[f];
    if (kind == SubalgebraKind::Compact && (factor.kind == FactorKind::OReal || factor.kind == FactorKind::U))
      kind = SubalgebraKind::Full;
    if (kind == SubalgebraKind::None) continue;
    if (kind == SubalgebraKind::Full) {
      for (std::size_t i = 0; i < fdim; ++i) span.push_back({{static_cast<std::uint32_t>(off + i), Rational(1)}});
      continue;
    }
    if (factor.kind == FactorKind::GlReal) {
      for (auto& v : shifted(lie::o_span(factor.n), off)) span.push_back(std::move(v));
      if (k.component_group && factor.n >= 2) {
        // Conjugation by diag(-1, 1, ..., 1): E_ij -> r_i r_j E_ij. Trivial for n = 1.
        auto a = rep::identity_matrix(n);
        for (std::size_t i = 0; i < factor.n; ++i)
          for (std::size_t j = 0; j < factor.n; ++j)
            if ((i == 0) != (j == 0)) a[off + i * factor.n + j][off + i * factor.n + j] = -1;
        automorphisms.push_back(std::move(a));
      }
    } else if (factor.kind == FactorKind::Bgl) {
      for (auto& v : shifted(lie::u_span(factor.n), off)) span.push_back(std::move(v));
    } else {
      throw InputError("no compact subalgebra is defined for " + factor.label());
    }
  }
  return relative_weil(g.algebra(), span, automorphisms, bound, max_degree, jobs);
}

linalg::BettiTable relative_cohomology(const RelativeWeil& r, bool with_representatives, unsigned jobs) {
  return gca::subcomplex_cohomology(r.algebra, r.complex, with_representatives, jobs);
}

std::vector<std::vector<Element>> invariant_polynomials(const lie::LieAlgebra& g, int max_sym_degree) {
  require(max_sym_degree >= 0, "maxSymDegree must be non-negative");
  const FreeGCA w = weil_algebra(g, std::nullopt);
  const std::size_t n = g.dim();
  std::vector<bool> allowed(2 * n, false);
  for (std::size_t a = 0; a < n; ++a) allowed[n + a] = true;
  std::vector<std::vector<Element>> derivs;
  for (std::size_t beta = 0; beta < n; ++beta) derivs.push_back(lie_derivative_images(w, beta));
  std::vector<std::vector<Element>> out;
  for (int s = 0; s <= max_sym_degree; ++s) {
    const auto monos = w.monomial_basis(2 * s, allowed);
    if (monos.size() > kMaxInvariantMonomials)
      throw InfeasibleError("S^" + std::to_string(s) + " has " + std::to_string(monos.size()) +
                            " monomials, above the bound " + std::to_string(kMaxInvariantMonomials));
    std::vector<linalg::SparseMatrix> rows;
    for (const auto& images : derivs) {
      std::vector<SparseVector> columns;
      for (const auto& m : monos) columns.push_back(gca::coordinates(w.apply_derivation(images, false, w.from_monomial(m)), monos));
      rows.push_back(linalg::SparseMatrix::from_columns(monos.size(), columns));
    }
    std::vector<Element> basis;
    for (const auto& v : linalg::kernel_basis_sparse(linalg::stack_rows(rows, monos.size())))
      basis.push_back(gca::element_from(v, monos));
    out.push_back(std::move(basis));
  }
  return out;
}

std::vector<std::size_t> invariant_polynomial_dims(const lie::LieAlgebra& g, int max_sym_degree) {
  std::vector<std::size_t> dims;
  for (const auto& b : invariant_polynomials(g, max_sym_degree)) dims.push_back(b.size());
  return dims;
}

E2Page e2_page(const lie::LieAlgebra& g, std::optional<int> bound, int max_degree) {
  require(max_degree >= 0, "maxDegree must be non-negative");
  if (bound) require(*bound >= 0 && *bound % 2 == 0, "truncation bound must be even and non-negative");
  E2Page page;
  page.truncation_bound = bound.value_or(-1);
  page.max_degree = max_degree;
  const int dim = static_cast<int>(g.dim());
  const auto ce = ce::ce_cohomology(g, dim).known_prefix(static_cast<std::size_t>(dim) + 1);
  const int max_p = bound ? std::min(*bound, max_degree) : max_degree;
  const auto inv = invariant_polynomial_dims(g, max_p / 2);
  page.entries.assign(static_cast<std::size_t>(max_p) + 1, std::vector<std::size_t>(ce.size(), 0));
  page.totals.assign(static_cast<std::size_t>(max_degree) + 1, 0);
  for (int p = 0; p <= max_p; p += 2)
    for (int q = 0; q <= dim; ++q) {
      const std::size_t v = ce[static_cast<std::size_t>(q)] * inv[static_cast<std::size_t>(p / 2)];
      page.entries[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = v;
      if (p + q <= max_degree) page.totals[static_cast<std::size_t>(p + q)] += v;
    }
  return page;
}

std::vector<std::size_t> polynomial_ring_hilbert_series(const std::vector<int>& degrees, int max_degree) {
  std::vector<std::size_t> series(static_cast<std::size_t>(max_degree) + 1, 0);
  series[0] = 1;
  for (int d : degrees) {
    require(d > 0, "generator degrees must be positive");
    for (int k = d; k <= max_degree; ++k) series[static_cast<std::size_t>(k)] += series[static_cast<std::size_t>(k - d)];
  }
  return series;
}

}  // namespace gfc::weil
