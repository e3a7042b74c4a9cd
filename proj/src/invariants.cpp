#include "gfc/invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "gfc/errors.hpp"

namespace gfc::inv {

using linalg::Entry;
using linalg::SparseMatrix;

namespace {

using Tuple = std::vector<std::size_t>;

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

/// k-subsets of {0..n-1} in lexicographic order.
std::vector<Tuple> subsets(std::size_t n, std::size_t k) {
  std::vector<Tuple> out;
  Tuple t;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (t.size() == k) {
      out.push_back(t);
      return;
    }
    for (std::size_t i = start; i + (k - t.size()) <= n; ++i) {
      t.push_back(i);
      rec(i + 1);
      t.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Non-decreasing k-tuples over {0..n-1} in lexicographic order.
std::vector<Tuple> multisets(std::size_t n, std::size_t k) {
  std::vector<Tuple> out;
  Tuple t;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (t.size() == k) {
      out.push_back(t);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      t.push_back(i);
      rec(i);
      t.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Lexicographic rank of a sorted k-subset of {0..n-1}.
std::size_t subset_rank(const Tuple& t, std::size_t n) {
  std::size_t rank = 0, prev = 0;
  const std::size_t k = t.size();
  for (std::size_t pos = 0; pos < k; ++pos) {
    for (std::size_t j = prev; j < t[pos]; ++j) rank += binom(n - 1 - j, k - 1 - pos);
    prev = t[pos] + 1;
  }
  return rank;
}

/// Sorts t and returns the sign of the sorting permutation, or 0 if t has a repeat.
int sort_with_sign(Tuple& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) return 0;
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  return sign;
}

std::size_t mono_index(std::size_t a, std::size_t b, std::size_t n) {
  if (a > b) std::swap(a, b);
  return a * n - a * (a == 0 ? 0 : a - 1) / 2 + (b - a);
}

struct SArg {
  std::size_t a, b, c;
};

struct UArg {
  std::size_t w, w_star, v_star;
};

std::vector<SArg> decode_s(std::size_t n) {
  std::vector<SArg> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) out.push_back({a, b, c});
  return out;
}

std::vector<UArg> decode_u(std::size_t n, std::size_t m) {
  std::vector<UArg> out;
  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t ws = 0; ws < m; ++ws)
      for (std::size_t v = 0; v < n; ++v) out.push_back({w, ws, v});
  return out;
}

/// phi(x, y) for phi = e_a e_b read as (u_a v_b + u_b v_a)/2.
Rational bilinear(const SArg& phi, std::size_t x, std::size_t y) {
  if (phi.a == phi.b) return Rational((x == phi.a && y == phi.a) ? 1 : 0);
  int hits = 0;
  if (x == phi.a && y == phi.b) ++hits;
  if (x == phi.b && y == phi.a) ++hits;
  return Rational(hits, 2);
}

/// Calls fn(flat, v, s_args, u_args) for every basis tuple of the form.
void for_each_basis(const MultilinearForm& f,
                    const std::function<void(std::size_t, const Tuple&, const Tuple&, const Tuple&)>& fn) {
  const auto vs = subsets(f.dim_v0(), f.r() + f.s());
  const auto ss = subsets(f.s_dim(), f.r());
  const auto us = subsets(f.u_dim(), f.s());
  for (std::size_t iv = 0; iv < vs.size(); ++iv)
    for (std::size_t is = 0; is < ss.size(); ++is)
      for (std::size_t iu = 0; iu < us.size(); ++iu) fn(f.flat(iv, is, iu), vs[iv], ss[is], us[iu]);
}

/// Every Tuple of positions of size k chosen from {0..n-1}, with the shuffle sign of (chosen, rest).
struct Split {
  Tuple chosen, rest;
  int sign;
};

std::vector<Split> splits(std::size_t n, std::size_t k) {
  std::vector<Split> out;
  for (const auto& c : subsets(n, k)) {
    Split s{c, {}, 1};
    std::size_t inversions = 0;
    for (std::size_t pos = 0; pos < c.size(); ++pos) inversions += c[pos] - pos;
    s.sign = (inversions % 2) ? -1 : 1;
    for (std::size_t i = 0, j = 0; i < n; ++i) {
      if (j < c.size() && c[j] == i)
        ++j;
      else
        s.rest.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

Tuple pick(const Tuple& t, const Tuple& positions) {
  Tuple out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(t[p]);
  return out;
}

MultilinearForm phi_raw(const Permutation& sigma, std::size_t n, std::size_t m) {
  const std::size_t r = sigma.size();
  MultilinearForm f(n, m, r, 0);
  const auto perms = Permutation::all(r);
  std::vector<Permutation> conjugates;
  for (const auto& beta : perms) conjugates.push_back(sigma.conjugate_by(beta));
  const auto sargs = decode_s(n);
  for_each_basis(f, [&](std::size_t flat, const Tuple& v, const Tuple& s, const Tuple&) {
    Rational total;
    for (const auto& nu : perms)
      for (const auto& pi : conjugates) {
        Rational term(nu.sign());
        for (std::size_t i = 0; i < r && !gfc::is_zero(term); ++i)
          term *= bilinear(sargs[s[i]], sargs[s[pi(i)]].c, v[nu(i)]);
        total += term;
      }
    f.at(flat) = total;
  });
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x : images_) {
    require(x < images_.size() && !seen[x], "not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t r) {
  std::vector<std::size_t> im(r);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycle_type(const std::vector<std::size_t>& parts) {
  std::vector<std::size_t> sorted = parts;
  std::sort(sorted.rbegin(), sorted.rend());
  std::vector<std::size_t> im;
  std::size_t start = 0;
  for (std::size_t len : sorted) {
    require(len > 0, "cycle lengths must be positive");
    for (std::size_t i = 0; i < len; ++i) im.push_back(start + (i + 1) % len);
    start += len;
  }
  return Permutation(std::move(im));
}

std::vector<Permutation> Permutation::all(std::size_t r) {
  std::vector<Permutation> out;
  std::vector<std::size_t> im(r);
  std::iota(im.begin(), im.end(), 0);
  do out.emplace_back(im);
  while (std::next_permutation(im.begin(), im.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> im(size());
  for (std::size_t i = 0; i < size(); ++i) im[images_[i]] = i;
  return Permutation(std::move(im));
}

Permutation Permutation::compose(const Permutation& other) const {
  require(size() == other.size(), "composing permutations of different sizes");
  std::vector<std::size_t> im(size());
  for (std::size_t i = 0; i < size(); ++i) im[i] = images_[other(i)];
  return Permutation(std::move(im));
}

Permutation Permutation::conjugate_by(const Permutation& beta) const {
  return beta.compose(*this).compose(beta.inverse());
}

Permutation Permutation::disjoint_union(const Permutation& other) const {
  std::vector<std::size_t> im = images_;
  for (std::size_t i = 0; i < other.size(); ++i) im.push_back(size() + other(i));
  return Permutation(std::move(im));
}

int Permutation::sign() const {
  std::size_t even_cycles = 0;
  for (std::size_t len : cycle_type())
    if (len % 2 == 0) ++even_cycles;
  return even_cycles % 2 ? -1 : 1;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<bool> seen(size(), false);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::size_t Permutation::centralizer_order() const {
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t len : cycle_type()) ++counts[len];
  std::size_t out = 1;
  for (const auto& [len, m] : counts)
    for (std::size_t i = 1; i <= m; ++i) out *= len * i;
  return out;
}

std::string Permutation::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += std::to_string(images_[i] + 1);
  }
  return s + "]";
}

std::size_t partitions_bounded(std::size_t n, std::size_t max_part) {
  std::vector<std::size_t> p(n + 1, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= std::min(n, max_part); ++part)
    for (std::size_t t = part; t <= n; ++t) p[t] += p[t - part];
  return p[n];
}

// ------------------------------------------------------------------------------------------ MultilinearForm

MultilinearForm::MultilinearForm(std::size_t dim_v0, std::size_t dim_w, std::size_t r, std::size_t s)
    : dim_v0_(dim_v0), dim_w_(dim_w), r_(r), s_(s) {
  n_s_subsets_ = binom(s_dim(), r);
  n_u_subsets_ = binom(u_dim(), s);
  coeffs_.assign(binom(dim_v0, r + s) * n_s_subsets_ * n_u_subsets_, Rational(0));
}

std::size_t MultilinearForm::s_dim() const { return dim_v0_ * (dim_v0_ + 1) / 2 * dim_v0_; }
std::size_t MultilinearForm::u_dim() const { return dim_w_ * dim_w_ * dim_v0_; }

std::size_t MultilinearForm::s_index(std::size_t a, std::size_t b, std::size_t c) const {
  require(a < dim_v0_ && b < dim_v0_ && c < dim_v0_, "S index out of range");
  return mono_index(a, b, dim_v0_) * dim_v0_ + c;
}

std::size_t MultilinearForm::u_index(std::size_t w, std::size_t w_star, std::size_t v_star) const {
  require(w < dim_w_ && w_star < dim_w_ && v_star < dim_v0_, "U index out of range");
  return (w * dim_w_ + w_star) * dim_v0_ + v_star;
}

Rational MultilinearForm::value(Tuple v, Tuple s_args, Tuple u_args) const {
  require(v.size() == r_ + s_ && s_args.size() == r_ && u_args.size() == s_, "wrong number of arguments");
  for (std::size_t x : v) require(x < dim_v0_, "V0 argument out of range");
  for (std::size_t x : s_args) require(x < s_dim(), "S argument out of range");
  for (std::size_t x : u_args) require(x < u_dim(), "U argument out of range");
  const int sign = sort_with_sign(v) * sort_with_sign(s_args) * sort_with_sign(u_args);
  if (sign == 0) return Rational(0);
  const Rational& c =
      coeffs_[flat(subset_rank(v, dim_v0_), subset_rank(s_args, s_dim()), subset_rank(u_args, u_dim()))];
  return sign > 0 ? c : Rational(-c);
}

bool MultilinearForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return gfc::is_zero(c); });
}

MultilinearForm multiply(const MultilinearForm& f, const MultilinearForm& g) {
  require(f.dim_v0() == g.dim_v0(), "multiplying forms over different V0");
  std::size_t m = f.dim_w();
  if (f.s() == 0)
    m = g.dim_w();
  else if (g.s() != 0)
    require(f.dim_w() == g.dim_w(), "multiplying forms over different W");
  MultilinearForm out(f.dim_v0(), m, f.r() + g.r(), f.s() + g.s());
  const std::size_t fv = f.r() + f.s();
  const auto vsplits = splits(out.r() + out.s(), fv);
  const auto ssplits = splits(out.r(), f.r());
  const auto usplits = splits(out.s(), f.s());
  // Forms with s = 0 ignore W, so the U arguments are re-encoded only when present.
  for_each_basis(out, [&](std::size_t flat, const Tuple& v, const Tuple& s, const Tuple& u) {
    Rational total;
    for (const auto& a : vsplits)
      for (const auto& b : ssplits)
        for (const auto& c : usplits) {
          const Rational x = f.value(pick(v, a.chosen), pick(s, b.chosen), pick(u, c.chosen));
          if (gfc::is_zero(x)) continue;
          const Rational y = g.value(pick(v, a.rest), pick(s, b.rest), pick(u, c.rest));
          if (gfc::is_zero(y)) continue;
          const Rational t = x * y;
          if (a.sign * b.sign * c.sign > 0)
            total += t;
          else
            total -= t;
        }
    out.at(flat) = total;
  });
  return out;
}

MultilinearForm phi(const Permutation& sigma, std::size_t dim_v0, std::size_t dim_w) {
  MultilinearForm f = phi_raw(sigma, dim_v0, dim_w);
  const Permutation canonical = Permutation::from_cycle_type(sigma.cycle_type());
  if (!(canonical == sigma))
    ensure(f == phi_raw(canonical, dim_v0, dim_w), "Phi depends on more than the cycle type");
  return f;
}

// ------------------------------------------------------------------------------------------- SymmetricForm

bool SymmetricForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return gfc::is_zero(c); });
}

SymmetricForm zero_symmetric(std::size_t dim_w, std::size_t s) {
  SymmetricForm f{dim_w, s, multisets(dim_w * dim_w, s), {}};
  f.coeffs.assign(f.basis.size(), Rational(0));
  return f;
}

namespace {

const Rational& sym_value(const SymmetricForm& f, Tuple pairs) {
  std::sort(pairs.begin(), pairs.end());
  auto it = std::lower_bound(f.basis.begin(), f.basis.end(), pairs);
  ensure(it != f.basis.end() && *it == pairs, "multiset outside the symmetric basis");
  return f.coeffs[static_cast<std::size_t>(it - f.basis.begin())];
}

}  // namespace

SymmetricForm psi_symmetric(const Permutation& gamma, std::size_t dim_w) {
  const std::size_t s = gamma.size();
  SymmetricForm f = zero_symmetric(dim_w, s);
  std::vector<Permutation> conjugates;
  for (const auto& omega : Permutation::all(s)) conjugates.push_back(gamma.conjugate_by(omega));
  for (std::size_t k = 0; k < f.basis.size(); ++k) {
    const Tuple& p = f.basis[k];
    std::size_t count = 0;
    for (const auto& pi : conjugates) {
      bool hit = true;
      for (std::size_t j = 0; j < s && hit; ++j) hit = (p[j] % dim_w) == (p[pi(j)] / dim_w);
      if (hit) ++count;
    }
    f.coeffs[k] = Rational(static_cast<long>(count));
  }
  return f;
}

SymmetricForm multiply(const SymmetricForm& f, const SymmetricForm& g) {
  require(f.dim_w == g.dim_w || f.s == 0 || g.s == 0, "multiplying symmetric forms over different W");
  const std::size_t m = f.s == 0 ? g.dim_w : f.dim_w;
  SymmetricForm out = zero_symmetric(m, f.s + g.s);
  const auto parts = splits(out.s, f.s);
  for (std::size_t k = 0; k < out.basis.size(); ++k) {
    Rational total;
    for (const auto& sp : parts) total += sym_value(f, pick(out.basis[k], sp.chosen)) * sym_value(g, pick(out.basis[k], sp.rest));
    out.coeffs[k] = total;
  }
  return out;
}

MultilinearForm tilde(const SymmetricForm& psi, std::size_t dim_v0) {
  MultilinearForm f(dim_v0, psi.dim_w, 0, psi.s);
  const auto uargs = decode_u(dim_v0, psi.dim_w);
  for_each_basis(f, [&](std::size_t flat, const Tuple& v, const Tuple&, const Tuple& u) {
    // Ω_s(v, v*) is the sign of the permutation matching the v* indices to v, or 0.
    Tuple vstar, pairs;
    for (std::size_t k : u) {
      vstar.push_back(uargs[k].v_star);
      pairs.push_back(uargs[k].w * psi.dim_w + uargs[k].w_star);
    }
    Tuple sorted = vstar;
    const int sign = sort_with_sign(sorted);
    if (sign == 0 || sorted != v) return;
    const Rational& c = sym_value(psi, pairs);
    f.at(flat) = sign > 0 ? c : Rational(-c);
  });
  return f;
}

MultilinearForm psi_tilde(const Permutation& gamma, std::size_t dim_v0, std::size_t dim_w) {
  return tilde(psi_symmetric(gamma, dim_w), dim_v0);
}

MultilinearForm psi_pair_direct(const Permutation& sigma, const Permutation& gamma, std::size_t dim_v0,
                                std::size_t dim_w) {
  const std::size_t r = sigma.size(), s = gamma.size();
  MultilinearForm f(dim_v0, dim_w, r, s);
  const auto alphas = Permutation::all(r + s);
  const auto betas = Permutation::all(r);
  const auto deltas = Permutation::all(s);
  const auto sargs = decode_s(dim_v0);
  const auto uargs = decode_u(dim_v0, dim_w);
  for_each_basis(f, [&](std::size_t flat, const Tuple& v, const Tuple& sa, const Tuple& ua) {
    Rational total;
    for (const auto& alpha : alphas)
      for (const auto& beta : betas) {
        // prod_i phi_{β(i)}(v'_{βσ(i)}, v_{α(i)})
        Rational left(alpha.sign() * beta.sign());
        for (std::size_t i = 0; i < r && !gfc::is_zero(left); ++i)
          left *= bilinear(sargs[sa[beta(i)]], sargs[sa[beta(sigma(i))]].c, v[alpha(i)]);
        if (gfc::is_zero(left)) continue;
        for (const auto& delta : deltas) {
          // prod_j w*_{δ(j)}(w_{δγ(j)}) v*_{δ(j)}(v_{α(r+j)})
          bool hit = true;
          for (std::size_t j = 0; j < s && hit; ++j) {
            const UArg& x = uargs[ua[delta(j)]];
            hit = x.w_star == uargs[ua[delta(gamma(j))]].w && x.v_star == v[alpha(r + j)];
          }
          if (!hit) continue;
          if (delta.sign() > 0)
            total += left;
          else
            total -= left;
        }
      }
    f.at(flat) = total;
  });
  return f;
}

MultilinearForm psi_pair(const Permutation& sigma, const Permutation& gamma, std::size_t dim_v0, std::size_t dim_w) {
  MultilinearForm product = multiply(phi(sigma, dim_v0, dim_w), psi_tilde(gamma, dim_v0, dim_w));
  ensure(product == psi_pair_direct(sigma, gamma, dim_v0, dim_w),
         "Phi_sigma * Psi_gamma differs from the direct psi_{sigma,gamma}");
  return product;
}

SymmetricForm ev(const MultilinearForm& f) {
  Tuple b(f.s());
  std::iota(b.begin(), b.end(), 0);
  return ev(f, b);
}

SymmetricForm ev(const MultilinearForm& f, const Tuple& partial_basis) {
  if (f.r() != 0) throw InputError("ev needs a form of bidegree (0, s)");
  if (f.s() > f.dim_v0()) throw InputError("ev needs s <= dimV0");
  require(partial_basis.size() == f.s(), "partial basis must have s vectors");
  Tuple check = partial_basis;
  require(sort_with_sign(check) != 0 && (check.empty() || check.back() < f.dim_v0()),
          "partial basis must be distinct vectors of V0");
  SymmetricForm out = zero_symmetric(f.dim_w(), f.s());
  for (std::size_t k = 0; k < out.basis.size(); ++k) {
    Tuple u;
    for (std::size_t i = 0; i < f.s(); ++i) {
      const std::size_t p = out.basis[k][i];
      u.push_back(f.u_index(p / f.dim_w(), p % f.dim_w(), partial_basis[i]));
    }
    out.coeffs[k] = f.value(partial_basis, {}, u);
  }
  if (!(tilde(out, f.dim_v0()) == f)) throw InputError("form is not in the image of tilde");
  return out;
}

// -------------------------------------------------------------------------------------------- TensorModule

TensorModule trivial_module(std::size_t generators) {
  return {1, std::vector<SparseMatrix>(generators, SparseMatrix(1, 1))};
}

TensorModule standard_module(std::size_t n, std::size_t offset, std::size_t generators) {
  TensorModule m{n, std::vector<SparseMatrix>(generators, SparseMatrix(n, n))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t g = offset + i * n + j;
      require(g < generators, "generator index out of range");
      m.action[g] = SparseMatrix::from_entries(n, n, {{i, j, Rational(1)}});
    }
  return m;
}

TensorModule dual(const TensorModule& m) {
  TensorModule out{m.dim, {}};
  for (const auto& a : m.action) {
    std::vector<Entry> e;
    for (const auto& x : a.entries()) e.push_back({x.col, x.row, -x.value});
    out.action.push_back(SparseMatrix::from_entries(m.dim, m.dim, std::move(e)));
  }
  return out;
}

TensorModule tensor(const TensorModule& a, const TensorModule& b) {
  require(a.action.size() == b.action.size(), "tensor factors over different Lie algebras");
  const std::size_t db = b.dim, dim = a.dim * b.dim;
  TensorModule out{dim, {}};
  for (std::size_t g = 0; g < a.action.size(); ++g) {
    std::vector<Entry> e;
    for (const auto& x : a.action[g].entries())
      for (std::size_t j = 0; j < db; ++j) e.push_back({x.row * db + j, x.col * db + j, x.value});
    for (const auto& x : b.action[g].entries())
      for (std::size_t i = 0; i < a.dim; ++i) e.push_back({i * db + x.row, i * db + x.col, x.value});
    out.action.push_back(SparseMatrix::from_entries(dim, dim, std::move(e)));
  }
  return out;
}

namespace {

TensorModule power(const TensorModule& m, std::size_t k, bool alternating) {
  const auto basis = alternating ? subsets(m.dim, k) : multisets(m.dim, k);
  TensorModule out{basis.size(), {}};
  for (const auto& a : m.action) {
    const auto cols = a.column_vectors();
    std::vector<Entry> e;
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const Tuple& t = basis[col];
      for (std::size_t pos = 0; pos < k; ++pos)
        for (const auto& [row, c] : cols[t[pos]]) {
          Tuple u = t;
          u[pos] = row;
          int sign = 1;
          if (alternating) {
            sign = sort_with_sign(u);
            if (sign == 0) continue;
          } else {
            std::sort(u.begin(), u.end());
          }
          const std::size_t r = alternating ? subset_rank(u, m.dim)
                                            : static_cast<std::size_t>(std::lower_bound(basis.begin(), basis.end(), u) -
                                                                       basis.begin());
          e.push_back({r, col, sign > 0 ? c : Rational(-c)});
        }
    }
    out.action.push_back(SparseMatrix::from_entries(basis.size(), basis.size(), std::move(e)));
  }
  return out;
}

}  // namespace

TensorModule exterior_power(const TensorModule& m, std::size_t k) { return power(m, k, true); }
TensorModule symmetric_power(const TensorModule& m, std::size_t k) { return power(m, k, false); }

std::size_t invariant_dim(const TensorModule& m) {
  if (m.dim == 0) return 0;
  return m.dim - linalg::rank(linalg::stack_rows(m.action, m.dim));
}

TensorModule form_module(std::size_t r, std::size_t s, std::size_t dim_v0, std::size_t dim_w) {
  const std::size_t gens = dim_v0 * dim_v0 + dim_w * dim_w;
  const TensorModule v = standard_module(dim_v0, 0, gens);
  const TensorModule vd = dual(v);
  const TensorModule w = standard_module(dim_w, dim_v0 * dim_v0, gens);
  const TensorModule sym = tensor(symmetric_power(vd, 2), v);
  const TensorModule u = tensor(tensor(w, dual(w)), vd);
  return tensor(tensor(exterior_power(v, r + s), exterior_power(sym, r)), exterior_power(u, s));
}

bool is_invariant(const MultilinearForm& f) {
  const TensorModule m = dual(form_module(f.r(), f.s(), f.dim_v0(), f.dim_w()));
  ensure(m.dim == f.size(), "form module and form disagree on dimension");
  for (const auto& a : m.action)
    for (const auto& x : a.apply(f.coefficients()))
      if (!gfc::is_zero(x)) return false;
  return true;
}

std::size_t inv_dim_bruteforce(std::size_t r, std::size_t s, std::size_t dim_v0, std::size_t dim_w) {
  const MultilinearForm shape(dim_v0, dim_w, r, s);
  // Check the intermediate exterior powers too; they can be large even when the product is empty.
  const std::size_t largest = std::max({shape.size(), binom(shape.s_dim(), r), binom(shape.u_dim(), s)});
  if (largest > kMaxTensorDim)
    throw InfeasibleError("tensor dimension " + std::to_string(largest) + " exceeds " +
                          std::to_string(kMaxTensorDim));
  return invariant_dim(dual(form_module(r, s, dim_v0, dim_w)));
}

std::size_t inv_dim_predicted(std::size_t r, std::size_t s, std::size_t dim_v0, std::size_t dim_w) {
  if (r + s > dim_v0) return 0;
  return partitions_bounded(r, dim_v0) * partitions_bounded(s, dim_w);
}

Rational stab_evaluation(const Permutation& sigma, const Permutation& tau, std::size_t dim_v0) {
  const std::size_t r = sigma.size();
  require(tau.size() == r, "sigma and tau must have the same size");
  require(dim_v0 >= r, "the evaluation protocol needs dimV0 >= r");
  const MultilinearForm f = phi(sigma, dim_v0);
  const Permutation tinv = tau.inverse();
  Tuple v(r), s(r);
  for (std::size_t i = 0; i < r; ++i) {
    v[i] = i;
    s[i] = f.s_index(i, i, tinv(i));
  }
  return f.value(v, s, {});
}

}  // namespace gfc::inv
