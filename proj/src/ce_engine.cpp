#include "gfc/ce_engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "gfc/errors.hpp"
#include "gfc/parallel.hpp"

namespace gfc::ce {

using linalg::SparseMatrix;
using linalg::SparseVector;

namespace {

std::size_t subset_index(const std::vector<Subset>& basis, const Subset& s) {
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  ensure(it != basis.end() && *it == s, "CE differential leaves the cochain basis");
  return static_cast<std::size_t>(it - basis.begin());
}

SparseMatrix ce_matrix(const lie::LieAlgebra& g, const std::vector<Subset>& src, const std::vector<Subset>& dst) {
  std::vector<linalg::Entry> entries;
  Subset rest, target;
  for (std::size_t row = 0; row < dst.size(); ++row) {
    const Subset& s = dst[row];
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const auto& br = g.bracket(s[i], s[j]);
        if (br.empty()) continue;
        rest.clear();
        for (std::size_t k = 0; k < s.size(); ++k)
          if (k != i && k != j) rest.push_back(s[k]);
        for (const auto& [k, c] : br) {
          auto pos = std::lower_bound(rest.begin(), rest.end(), k);
          if (pos != rest.end() && *pos == k) continue;
          target = rest;
          const auto offset = pos - rest.begin();
          target.insert(target.begin() + offset, static_cast<std::uint16_t>(k));
          const bool negative = ((i + j + static_cast<std::size_t>(offset)) % 2) != 0;
          entries.push_back({row, subset_index(src, target), negative ? Rational(-c) : c});
        }
      }
  }
  return SparseMatrix::from_entries(dst.size(), src.size(), std::move(entries));
}

void all_subsets(std::size_t n, std::size_t q, std::vector<Subset>& out) {
  Subset s;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (s.size() == q) {
      out.push_back(s);
      return;
    }
    for (std::size_t i = start; i + (q - s.size()) <= n; ++i) {
      s.push_back(static_cast<std::uint16_t>(i));
      rec(i + 1);
      s.pop_back();
    }
  };
  rec(0);
}

}  // namespace

linalg::ChainComplexSlice ce_complex(const lie::LieAlgebra& g, const std::vector<std::vector<Subset>>& cochains,
                                     unsigned jobs) {
  ensure(!cochains.empty(), "CE complex needs degree 0");
  std::vector<std::size_t> dims;
  for (const auto& c : cochains) dims.push_back(c.size());
  std::vector<SparseMatrix> ds(cochains.size() - 1);
  parallel_for(ds.size(), jobs, [&](std::size_t q) { ds[q] = ce_matrix(g, cochains[q], cochains[q + 1]); });
  return linalg::ChainComplexSlice(std::move(dims), std::move(ds));
}

linalg::BettiTable ce_cohomology(const lie::LieAlgebra& g, int max_degree, unsigned jobs) {
  require(max_degree >= 0, "maxDegree must be non-negative");
  if (g.dim() > kMaxCeDim)
    throw InfeasibleError("CE cohomology is limited to dim <= " + std::to_string(kMaxCeDim) + " (got " +
                          std::to_string(g.dim()) + ")");
  std::vector<std::vector<Subset>> cochains(static_cast<std::size_t>(max_degree) + 2);
  for (std::size_t q = 0; q < cochains.size(); ++q) all_subsets(g.dim(), q, cochains[q]);
  return linalg::cohomology_dims(ce_complex(g, cochains, jobs), false, jobs);
}

namespace {

struct WxElement {
  bool vector_field = false;
  std::vector<int> exponent;
  std::size_t component = 0;  // d_i direction, or index into the matrix algebra

  auto key() const { return std::tie(vector_field, exponent, component); }
};

void monomials_of_degree(std::size_t vars, int degree, std::vector<std::vector<int>>& out) {
  std::vector<int> a(vars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i + 1 >= vars) {
      if (vars > 0) a[vars - 1] = remaining;
      if (vars > 0 || remaining == 0) out.push_back(a);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      a[i] = e;
      rec(i + 1, remaining - e);
    }
    a[i] = 0;
  };
  rec(0, degree);
}

std::string monomial_symbol(const std::vector<int>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i);
    if (a[i] > 1) s += "^" + std::to_string(a[i]);
  }
  return s;
}

int total(const std::vector<int>& a) {
  int t = 0;
  for (int e : a) t += e;
  return t;
}

}  // namespace

lie::LieAlgebra build_wx(const rep::Decomposition& d, int max_weight) {
  d.validate();
  require(max_weight >= -1, "maxWeight must be >= -1");
  std::vector<lie::LieAlgebra> parts;
  std::vector<std::string> part_names;
  if (d.field == rep::Field::Real) {
    if (d.mMinus1 > 0) {
      parts.push_back(lie::gl(d.mMinus1));
      part_names.push_back("m-1");
    }
    for (const auto& f : d.factors) {
      parts.push_back(lie::bgl(f.multiplicity));
      part_names.push_back(f.label);
    }
  } else {
    for (const auto& f : d.factors) {
      parts.push_back(lie::gl(f.multiplicity));
      part_names.push_back(f.label);
    }
  }
  const lie::LieAlgebra matrices = lie::direct_sum(parts);
  const std::size_t n = d.dimV0;
  // Without V0 the algebra is finite-dimensional and nothing is truncated.
  const bool truncated = n > 0;
  const int window = truncated ? max_weight : 0;

  std::vector<WxElement> elems;
  std::vector<lie::BasisElement> basis;
  if (truncated) {
    for (int deg = 0; deg <= window + 1; ++deg) {
      std::vector<std::vector<int>> monos;
      monomials_of_degree(n, deg, monos);
      for (const auto& a : monos)
        for (std::size_t i = 0; i < n; ++i) {
          elems.push_back({true, a, i});
          const auto m = monomial_symbol(a);
          basis.push_back({(m.empty() ? "" : m + "*") + "d" + std::to_string(i), deg - 1});
        }
    }
  }
  for (int deg = 0; deg <= window; ++deg) {
    std::vector<std::vector<int>> monos;
    monomials_of_degree(n, deg, monos);
    for (const auto& a : monos)
      for (std::size_t c = 0; c < matrices.dim(); ++c) {
        elems.push_back({false, a, c});
        const auto m = monomial_symbol(a);
        basis.push_back({(m.empty() ? "" : m + "*") + matrices.basis()[c].symbol, deg});
      }
  }
  std::map<std::tuple<bool, std::vector<int>, std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    index[{elems[i].vector_field, elems[i].exponent, elems[i].component}] = i;

  auto lookup = [&](bool vf, const std::vector<int>& a, std::size_t comp) -> std::optional<std::size_t> {
    auto it = index.find({vf, a, comp});
    if (it == index.end()) return std::nullopt;
    return it->second;
  };
  auto weight_of = [](bool vf, const std::vector<int>& a) { return total(a) - (vf ? 1 : 0); };

  auto bracket = [&](std::size_t p, std::size_t q) {
    const auto& x = elems[p];
    const auto& y = elems[q];
    std::map<std::uint32_t, Rational> acc;
    auto add = [&](bool vf, std::vector<int> a, std::size_t comp, const Rational& c) {
      if (is_zero(c)) return;
      for (int e : a)
        if (e < 0) return;
      if (weight_of(vf, a) > window) return;  // truncated away
      auto k = lookup(vf, a, comp);
      ensure(k.has_value(), "W_X bracket term missing from the slice");
      acc[static_cast<std::uint32_t>(*k)] += c;
    };
    auto sum = [](const std::vector<int>& a, const std::vector<int>& b) {
      std::vector<int> s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      return s;
    };
    if (x.vector_field && y.vector_field) {
      // [x^a d_i, x^b d_j] = b_i x^{a+b-e_i} d_j - a_j x^{a+b-e_j} d_i
      auto s = sum(x.exponent, y.exponent);
      auto s1 = s;
      s1[x.component] -= 1;
      add(true, s1, y.component, Rational(y.exponent[x.component]));
      auto s2 = s;
      s2[y.component] -= 1;
      add(true, s2, x.component, Rational(-x.exponent[y.component]));
    } else if (x.vector_field || y.vector_field) {
      const auto& v = x.vector_field ? x : y;
      const auto& f = x.vector_field ? y : x;
      auto s = sum(v.exponent, f.exponent);
      s[v.component] -= 1;
      Rational c(f.exponent[v.component]);
      if (!x.vector_field) c = -c;
      add(false, s, f.component, c);
    } else {
      auto s = sum(x.exponent, y.exponent);
      for (const auto& [k, c] : matrices.bracket(x.component, y.component)) add(false, s, k, c);
    }
    SparseVector out;
    for (const auto& [k, c] : acc)
      if (!is_zero(c)) out.emplace_back(k, c);
    return out;
  };
  return lie::LieAlgebra(std::move(basis), bracket, truncated ? std::optional<int>(window) : std::nullopt);
}

std::vector<Subset> weight_zero_subsets(const lie::LieAlgebra& g, std::size_t q) {
  const std::size_t n = g.dim();
  int max_w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ensure(g.weight(i) >= -1, "weights must be >= -1");
    max_w = std::max(max_w, g.weight(i));
  }
  std::vector<Subset> out;
  Subset s;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int sum) {
    const int left = static_cast<int>(q - s.size());
    if (left == 0) {
      if (sum == 0) {
        out.push_back(s);
        if (out.size() > kMaxWeightZeroCochains)
          throw InfeasibleError("more than " + std::to_string(kMaxWeightZeroCochains) +
                                " weight-zero cochains in degree " + std::to_string(q));
      }
      return;
    }
    // Remaining weights lie in [-1, max_w].
    if (sum - left > 0 || sum + left * max_w < 0) return;
    for (std::size_t i = start; i + static_cast<std::size_t>(left) <= n; ++i) {
      s.push_back(static_cast<std::uint16_t>(i));
      rec(i + 1, sum + g.weight(i));
      s.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

linalg::BettiTable weight_zero_cohomology(const lie::LieAlgebra& g, int max_degree, unsigned jobs) {
  require(max_degree >= 0, "maxDegree must be non-negative");
  if (g.window() && *g.window() < required_window(max_degree))
    throw InputError("weight window " + std::to_string(*g.window()) + " is too small for maxDegree " +
                     std::to_string(max_degree) + " (need >= " + std::to_string(required_window(max_degree)) + ")");
  require(g.dim() < 65536, "too many basis elements");
  std::vector<std::vector<Subset>> cochains(static_cast<std::size_t>(max_degree) + 2);
  parallel_for(cochains.size(), jobs, [&](std::size_t q) { cochains[q] = weight_zero_subsets(g, q); });
  return linalg::cohomology_dims(ce_complex(g, cochains, jobs), false, jobs);
}

}  // namespace gfc::ce
