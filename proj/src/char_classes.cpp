#include "gfc/char_classes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gfc/errors.hpp"
#include "gfc/gca.hpp"
#include "gfc/parallel.hpp"

namespace gfc::cc {

using gca::Element;
using gca::Monomial;
using linalg::SparseVector;
using weil::FactorKind;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Absolute: return "absolute";
    case Mode::RelativeGl: return "relative-gl";
    case Mode::RelativeSo: return "relative-so";
    case Mode::RelativeO: return "relative-o";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "absolute") return Mode::Absolute;
  if (s == "relative-gl") return Mode::RelativeGl;
  if (s == "relative-so") return Mode::RelativeSo;
  if (s == "relative-o") return Mode::RelativeO;
  throw InputError("unknown mode \"" + s + "\" (expected absolute, relative-gl, relative-so or relative-o)");
}

namespace {

struct Block {
  std::string name;
  FactorKind kind;
  std::size_t n;
};

std::vector<Block> blocks_of(const rep::Decomposition& d) {
  d.validate();
  std::vector<Block> out;
  if (d.field == rep::Field::Real) {
    if (d.dimV0 > 0) out.push_back({"V0", FactorKind::GlReal, d.dimV0});
    if (d.mMinus1 > 0) out.push_back({"W-1", FactorKind::GlReal, d.mMinus1});
    for (const auto& f : d.factors) out.push_back({f.label, FactorKind::Bgl, f.multiplicity});
  } else {
    if (d.dimV0 > 0) out.push_back({"V0", FactorKind::GlComplex, d.dimV0});
    for (const auto& f : d.factors) out.push_back({f.label, FactorKind::GlComplex, f.multiplicity});
  }
  return out;
}

std::string suffix(const Block& b) { return b.name == "V0" ? "" : "[" + b.name + "]"; }

int truncation_bound(const rep::Decomposition& d) { return 2 * static_cast<int>(d.dimV0); }

/// A base generator: its label and its representative in the untruncated Weil algebra of the product.
struct BaseGenerator {
  ClassLabel label;
  Element element;
};

/// Greedy generators of (S g_f*)^{g_f} for one block, embedded into the product's Weil algebra.
std::vector<BaseGenerator> block_generators(const Block& b, const weil::LieFactor& factor, std::size_t offset,
                                            std::size_t total_dim) {
  const std::size_t expected_top = b.n;
  const std::size_t per_degree = b.kind == FactorKind::Bgl ? 2 : 1;
  const auto& g = factor.algebra;
  const std::size_t fdim = g.dim();
  const gca::FreeGCA wf = weil::weil_algebra(g, std::nullopt);
  const auto invariants = weil::invariant_polynomials(g, static_cast<int>(expected_top));

  std::vector<Element> chosen;
  std::vector<int> chosen_deg;  // symmetric degree
  std::vector<BaseGenerator> out;
  for (std::size_t s = 1; s <= expected_top; ++s) {
    const auto basis = wf.monomial_basis(2 * static_cast<int>(s));
    linalg::EchelonBasis span(basis.size());
    // Products of earlier generators with total symmetric degree s.
    std::function<void(std::size_t, int, const Element&)> rec = [&](std::size_t start, int left, const Element& acc) {
      if (left == 0) {
        span.insert(gca::coordinates(acc, basis));
        return;
      }
      for (std::size_t i = start; i < chosen.size(); ++i)
        if (chosen_deg[i] <= left) rec(i, left - chosen_deg[i], wf.multiply(acc, chosen[i]));
    };
    rec(0, static_cast<int>(s), wf.one());
    std::size_t found = 0;
    for (const auto& p : invariants[s]) {
      if (!span.insert(gca::coordinates(p, basis))) continue;
      chosen.push_back(p);
      chosen_deg.push_back(static_cast<int>(s));
      ++found;
      std::string name;
      std::string kind;
      if (b.kind == FactorKind::Bgl) {
        name = std::string(found == 1 ? "x" : "y") + std::to_string(s);
        kind = "chern-pair";
      } else if (b.kind == FactorKind::GlReal) {
        name = "p" + std::to_string(s);
        kind = "pontryagin";
      } else {
        name = std::string(b.name == "V0" ? "xi" : "eta") + std::to_string(s);
        kind = "chern";
      }
      // Embed: y_i -> y_{offset+i}, c_i -> c_{offset+i} in a product with total_dim covectors.
      Element embedded;
      for (const auto& [m, c] : p) {
        Monomial e(2 * total_dim, 0);
        for (std::size_t i = 0; i < fdim; ++i) {
          e[offset + i] = m[i];
          e[total_dim + offset + i] = m[fdim + i];
        }
        embedded[e] = c;
      }
      out.push_back({{name + suffix(b), 2 * static_cast<int>(s), kind, b.name}, std::move(embedded)});
    }
    ensure(found == per_degree, "block " + b.name + ": expected " + std::to_string(per_degree) +
                                    " invariant generator(s) in symmetric degree " + std::to_string(s) + ", found " +
                                    std::to_string(found));
  }
  return out;
}

std::vector<BaseGenerator> all_base_generators(const rep::Decomposition& d) {
  const auto blocks = blocks_of(d);
  const weil::LieProduct product = lie_product_for(d);
  std::vector<BaseGenerator> out;
  for (std::size_t f = 0; f < blocks.size(); ++f)
    for (auto& g : block_generators(blocks[f], product.factors()[f], product.offset(f), product.dim()))
      out.push_back(std::move(g));
  return out;
}

}  // namespace

weil::LieProduct lie_product_for(const rep::Decomposition& d) {
  std::vector<weil::LieFactor> factors;
  for (const auto& b : blocks_of(d)) factors.push_back(weil::make_factor(b.kind, b.n));
  return weil::LieProduct(std::move(factors));
}

std::vector<std::string> block_names(const rep::Decomposition& d) {
  std::vector<std::string> out;
  for (const auto& b : blocks_of(d)) out.push_back(b.name);
  return out;
}

weil::SubalgebraSpec subalgebra_for(const rep::Decomposition& d, Mode mode) {
  const auto blocks = blocks_of(d);
  if (d.field == rep::Field::Complex && (mode == Mode::RelativeSo || mode == Mode::RelativeO))
    throw InputError("mode " + to_string(mode) + " needs a real decomposition (complex allows absolute, relative-gl)");
  weil::SubalgebraSpec spec;
  weil::SubalgebraKind kind = weil::SubalgebraKind::None;
  if (mode == Mode::RelativeGl) kind = weil::SubalgebraKind::Full;
  if (mode == Mode::RelativeSo || mode == Mode::RelativeO) kind = weil::SubalgebraKind::Compact;
  spec.per_factor.assign(blocks.size(), kind);
  spec.component_group = mode == Mode::RelativeO;
  return spec;
}

std::vector<ClassLabel> base_generators(const rep::Decomposition& d) {
  std::vector<ClassLabel> out;
  for (const auto& g : all_base_generators(d)) out.push_back(g.label);
  return out;
}

VanishingReport vanishing_report(const rep::Decomposition& d) {
  VanishingReport report;
  report.bound = truncation_bound(d);
  const auto gens = all_base_generators(d);
  const weil::LieProduct product = lie_product_for(d);
  const gca::FreeGCA truncated = weil::weil_algebra(product, report.bound);
  const gca::FreeGCA full = weil::weil_algebra(product, std::nullopt);
  int top = 0;
  for (const auto& g : gens) top = std::max(top, g.label.degree);

  std::vector<std::size_t> exps(gens.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int degree) {
    if (i == gens.size()) {
      if (degree <= report.bound) return;
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (exps[j] > 0 && degree - gens[j].label.degree > report.bound) return;  // not minimal
      VanishingMonomial m;
      m.degree = degree;
      Element t = truncated.one(), u = full.one();
      for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t e = 0; e < exps[j]; ++e) {
          t = truncated.multiply(t, gens[j].element);
          u = full.multiply(u, gens[j].element);
        }
      for (std::size_t j = 0; j < gens.size(); ++j) {
        if (exps[j] == 0) continue;
        if (!m.name.empty()) m.name += "*";
        m.name += gens[j].label.name;
        if (exps[j] > 1) m.name += "^" + std::to_string(exps[j]);
      }
      m.zero_when_truncated = t.empty();
      m.nonzero_untruncated = !u.empty();
      report.monomials.push_back(std::move(m));
      return;
    }
    for (std::size_t e = 0; degree + static_cast<int>(e) * gens[i].label.degree <= report.bound + top; ++e) {
      exps[i] = e;
      rec(i + 1, degree + static_cast<int>(e) * gens[i].label.degree);
    }
    exps[i] = 0;
  };
  rec(0, 0);
  report.verified = std::all_of(report.monomials.begin(), report.monomials.end(), [](const VanishingMonomial& m) {
    return m.zero_when_truncated && m.nonzero_untruncated;
  });
  return report;
}

std::vector<std::vector<std::size_t>> filtration_profile(const gca::FreeGCA& w, const gca::Subcomplex& s,
                                                         int max_degree) {
  require(max_degree >= 0 && s.basis.size() >= static_cast<std::size_t>(max_degree) + 2,
          "subcomplex does not reach maxDegree + 1");
  auto image = [&](std::size_t q, const SparseVector& row) {
    return gca::coordinates(w.apply_differential(gca::element_from(row, s.monomials[q])), s.monomials[q + 1]);
  };
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t q = 0; q <= static_cast<std::size_t>(max_degree); ++q) {
    const auto& rows = s.basis[q];
    const std::size_t nmono = s.monomials[q].size();
    std::vector<SparseVector> boundaries;
    if (q > 0)
      for (const auto& r : s.basis[q - 1]) boundaries.push_back(image(q - 1, r));
    std::vector<SparseVector> d_rows;
    for (const auto& r : rows) d_rows.push_back(image(q, r));

    linalg::EchelonBasis b_span(nmono);
    for (const auto& b : boundaries) b_span.insert(b);
    const std::size_t b_rank = b_span.rank();

    std::vector<std::size_t> fp(q + 2, 0);  // dim F^p H^q, with F^{q+1} = 0
    for (std::size_t p = 0; p <= q; ++p) {
      // Columns: row i restricted to monomials of filtration < p, stacked over d(row i).
      std::vector<SparseVector> cols;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        SparseVector col;
        for (const auto& [k, c] : rows[i])
          if (w.filtration(s.monomials[q][k]) < static_cast<int>(p)) col.emplace_back(k, c);
        for (const auto& [k, c] : d_rows[i]) col.emplace_back(static_cast<std::uint32_t>(nmono + k), c);
        cols.push_back(std::move(col));
      }
      const auto m = linalg::SparseMatrix::from_columns(nmono + s.monomials[q + 1].size(), cols);
      linalg::EchelonBasis span = b_span;
      for (const auto& c : linalg::kernel_basis_sparse(m)) {
        SparseVector z;
        for (const auto& [i, x] : c) linalg::axpy(z, x, rows[i]);
        span.insert(std::move(z));
      }
      fp[p] = span.rank() - b_rank;
    }
    std::vector<std::size_t> gr(q + 1);
    for (std::size_t p = 0; p <= q; ++p) gr[p] = fp[p] - fp[p + 1];
    out.push_back(std::move(gr));
  }
  return out;
}

namespace {

std::vector<ClassLabel> survivors_from_profile(const std::vector<std::vector<std::size_t>>& profile, int bound) {
  std::vector<ClassLabel> out;
  for (std::size_t q = 0; q < profile.size(); ++q) {
    std::size_t k = 0;
    for (std::size_t p = q; p-- > 0;)
      for (std::size_t i = 0; i < profile[q][p]; ++i) {
        ClassLabel c;
        c.name = "s" + std::to_string(q) + "." + std::to_string(++k);
        c.degree = static_cast<int>(q);
        c.kind = "secondary";
        c.block = "fiber";
        c.filtration = static_cast<int>(p);
        c.corner = static_cast<int>(p) == bound;
        out.push_back(std::move(c));
      }
  }
  return out;
}

void require_orthogonal_mode(Mode mode) {
  if (mode != Mode::RelativeSo && mode != Mode::RelativeO)
    throw InputError("secondary classes are defined for relative-so and relative-o");
}

}  // namespace

RingReport char_class_ring(const rep::Decomposition& d, Mode mode, int max_degree, unsigned jobs) {
  require(max_degree >= 0, "maxDegree must be non-negative");
  RingReport r;
  r.decomposition = d;
  r.mode = mode;
  r.max_degree = max_degree;
  r.truncation_bound = truncation_bound(d);
  const weil::LieProduct product = lie_product_for(d);
  const weil::SubalgebraSpec spec = subalgebra_for(d, mode);
  r.lie_algebra = product.label();

  const weil::RelativeWeil rel = weil::relative_weil(product, spec, r.truncation_bound, max_degree, jobs);
  for (const auto& b : rel.complex.basis) r.complex_dims.push_back(b.size());
  r.betti = weil::relative_cohomology(rel, false, jobs);
  if (mode == Mode::Absolute)
    ensure(r.betti.betti == gca::cdga_cohomology(rel.algebra, max_degree, false, jobs).betti,
           "basic subcomplex with k = 0 disagrees with the full Weil algebra");

  const auto profile = filtration_profile(rel.algebra, rel.complex, max_degree);
  for (std::size_t q = 0; q < profile.size(); ++q) {
    std::size_t total = 0;
    for (auto x : profile[q]) total += x;
    ensure(r.betti.betti[q] && *r.betti.betti[q] == total, "filtration profile does not add up to the Betti number");
    r.primary_dims.push_back(profile[q][q]);
  }
  if (mode == Mode::RelativeSo || mode == Mode::RelativeO)
    r.secondary = survivors_from_profile(profile, r.truncation_bound);

  r.generators = base_generators(d);
  const weil::RelativeWeil fiber = weil::relative_weil(product, spec, 0, max_degree, jobs);
  r.fiber_betti = weil::relative_cohomology(fiber, false, jobs);
  // Greedy exterior factorization of the fiber Poincare polynomial within the window.
  std::vector<std::size_t> poly(static_cast<std::size_t>(max_degree) + 1, 0);
  poly[0] = 1;
  ensure(r.fiber_betti.betti[0] == std::optional<std::size_t>(1), "fiber cohomology is not connected");
  for (int deg = 1; deg <= max_degree && r.fiber_exterior; ++deg) {
    const std::size_t target = *r.fiber_betti.betti[static_cast<std::size_t>(deg)];
    if (poly[static_cast<std::size_t>(deg)] > target) {
      r.fiber_exterior = false;
      break;
    }
    const std::size_t extra = target - poly[static_cast<std::size_t>(deg)];
    for (std::size_t k = 0; k < extra; ++k) {
      r.generators.push_back({"h" + std::to_string(deg) + (extra > 1 ? "_" + std::to_string(k + 1) : ""), deg,
                              "fiber", "fiber"});
      for (int t = max_degree; t >= deg; --t)
        poly[static_cast<std::size_t>(t)] += poly[static_cast<std::size_t>(t - deg)];
    }
    if (deg % 2 == 0 && extra > 0) r.fiber_exterior = false;
  }

  r.control = gca::cdga_cohomology(weil::weil_algebra(product, std::nullopt), max_degree, false, jobs);
  for (std::size_t q = 1; q <= static_cast<std::size_t>(max_degree); ++q)
    ensure(r.control.betti[q] == std::optional<std::size_t>(0), "untruncated Weil algebra is not acyclic");

  r.vanishing = vanishing_report(d);
  ensure(r.vanishing.verified, "a base monomial above the truncation bound survives");
  return r;
}

std::vector<ClassLabel> secondary_survivors(const rep::Decomposition& d, Mode mode, int max_degree, unsigned jobs) {
  require_orthogonal_mode(mode);
  require(max_degree >= 0, "maxDegree must be non-negative");
  const weil::LieProduct product = lie_product_for(d);
  const weil::RelativeWeil rel =
      weil::relative_weil(product, subalgebra_for(d, mode), truncation_bound(d), max_degree, jobs);
  return survivors_from_profile(filtration_profile(rel.algebra, rel.complex, max_degree), truncation_bound(d));
}

rep::Decomposition power_decomposition(std::size_t N, const rep::RealBlocks& blocks, std::size_t t) {
  require(N >= 1, "cyclic order must be positive");
  t %= N;
  const std::size_t g = std::gcd(N, t == 0 ? N : t);
  const std::size_t order = N / g;
  rep::RealBlocks b;
  b.plus1 = blocks.plus1 + (t % 2 == 0 ? blocks.minus1 : 0);
  b.minus1 = t % 2 == 0 ? 0 : blocks.minus1;
  for (long long k : blocks.rotations) {
    const auto r = static_cast<std::size_t>(((k % static_cast<long long>(N)) + static_cast<long long>(N)) %
                                            static_cast<long long>(N));
    b.rotations.push_back(static_cast<long long>((r * t % N) / g));
  }
  return rep::decompose_real_cyclic(order, b);
}

rep::Decomposition power_decomposition(std::size_t N, const std::vector<long long>& weights, std::size_t t) {
  require(N >= 1, "cyclic order must be positive");
  t %= N;
  const std::size_t g = std::gcd(N, t == 0 ? N : t);
  std::vector<long long> w;
  for (long long k : weights) {
    const auto r = static_cast<std::size_t>(((k % static_cast<long long>(N)) + static_cast<long long>(N)) %
                                            static_cast<long long>(N));
    w.push_back(static_cast<long long>((r * t % N) / g));
  }
  return rep::decompose_complex(N / g, w);
}

namespace {

std::vector<InertiaEntry> cyclic_entries(std::size_t N, const std::function<rep::Decomposition(std::size_t)>& dec,
                                         Mode mode, int max_degree, unsigned jobs) {
  require(N >= 1, "cyclic order must be positive");
  std::vector<InertiaEntry> out(N);
  // Parallel over classes; each report runs single-threaded.
  parallel_for(N, jobs, [&](std::size_t t) {
    InertiaEntry e;
    e.label = t == 0 ? "e" : (t == 1 ? "g" : "g^" + std::to_string(t));
    e.element_order = N / std::gcd(N, t == 0 ? N : t);
    e.class_size = 1;
    e.centralizer_order = N;
    e.report = char_class_ring(dec(t), mode, max_degree, 1);
    e.report.inertia_label = e.label;
    e.fixed_dim = e.report.decomposition.dimV0;
    out[t] = std::move(e);
  });
  return out;
}

}  // namespace

std::vector<InertiaEntry> inertia_report(const rep::FiniteMatrixGroup& g, Mode mode, int max_degree, unsigned jobs) {
  const auto comps = rep::inertia_components(g, jobs);
  std::size_t total = 0;
  for (const auto& c : comps) total += c.class_size;
  ensure(total == g.order(), "class sizes do not sum to the group order");
  std::vector<InertiaEntry> out(comps.size());
  parallel_for(comps.size(), jobs, [&](std::size_t i) {
    const auto& c = comps[i];
    InertiaEntry e;
    e.label = "C" + std::to_string(i);
    e.element_order = c.element_order;
    e.class_size = c.class_size;
    e.centralizer_order = c.centralizer_order;
    e.fixed_dim = c.fixed_dim;
    e.representative = c.representative;
    e.report = char_class_ring(c.decomposition, mode, max_degree, 1);
    e.report.inertia_label = e.label;
    out[i] = std::move(e);
  });
  return out;
}

std::vector<InertiaEntry> inertia_report(std::size_t N, const rep::RealBlocks& blocks, Mode mode, int max_degree,
                                         unsigned jobs) {
  rep::decompose_real_cyclic(N, blocks);  // validates the declared order
  return cyclic_entries(
      N, [&](std::size_t t) { return power_decomposition(N, blocks, t); }, mode, max_degree, jobs);
}

std::vector<InertiaEntry> inertia_report(std::size_t N, const std::vector<long long>& weights, Mode mode,
                                         int max_degree, unsigned jobs) {
  return cyclic_entries(
      N, [&](std::size_t t) { return power_decomposition(N, weights, t); }, mode, max_degree, jobs);
}

}  // namespace gfc::cc
