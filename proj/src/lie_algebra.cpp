#include "gfc/lie_algebra.hpp"

#include <map>

#include "gfc/errors.hpp"

namespace gfc::lie {

namespace {

SparseVector from_map(const std::map<std::uint32_t, Rational>& m) {
  SparseVector v;
  for (const auto& [i, c] : m)
    if (!is_zero(c)) v.emplace_back(i, c);
  return v;
}

void accumulate(std::map<std::uint32_t, Rational>& acc, const Rational& c, const SparseVector& v) {
  for (const auto& [i, x] : v) acc[i] += c * x;
}

SparseVector negated(SparseVector v) {
  for (auto& [i, x] : v) x = -x;
  return v;
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<BasisElement> basis, const BracketFn& bracket, std::optional<int> window)
    : basis_(std::move(basis)), window_(window) {
  const std::size_t n = basis_.size();
  table_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i) {
    ensure(bracket(i, i).empty(), "[" + basis_[i].symbol + ", " + basis_[i].symbol + "] != 0");
    for (std::size_t j = i + 1; j < n; ++j) {
      SparseVector v = bracket(i, j);
      ensure(bracket(j, i) == negated(v), "bracket is not antisymmetric on (" + basis_[i].symbol + ", " +
                                               basis_[j].symbol + ")");
      for (const auto& [k, c] : v) {
        ensure(k < n, "structure constant index out of range");
        ensure(!is_zero(c), "stored zero structure constant");
        ensure(basis_[k].weight == basis_[i].weight + basis_[j].weight,
               "bracket of " + basis_[i].symbol + " and " + basis_[j].symbol + " does not add weights");
        ensure(!window_ || basis_[k].weight <= *window_, "bracket lands above the weight window");
      }
      table_[j * n + i] = negated(v);
      table_[i * n + j] = std::move(v);
    }
  }
  check_jacobi();
}

void LieAlgebra::check_jacobi() const {
  const std::size_t n = dim();
  auto inside = [&](int w) { return !window_ || w <= *window_; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const int wi = weight(i), wj = weight(j), wk = weight(k);
        if (!inside(wi + wj) || !inside(wj + wk) || !inside(wi + wk) || !inside(wi + wj + wk)) continue;
        std::map<std::uint32_t, Rational> acc;
        for (const auto& [a, c] : bracket(i, j)) accumulate(acc, c, bracket(a, k));
        for (const auto& [a, c] : bracket(j, k)) accumulate(acc, c, bracket(a, i));
        for (const auto& [a, c] : bracket(k, i)) accumulate(acc, c, bracket(a, j));
        ensure(from_map(acc).empty(), "Jacobi identity fails on (" + basis_[i].symbol + ", " + basis_[j].symbol +
                                          ", " + basis_[k].symbol + ")");
      }
}

SparseVector LieAlgebra::bracket(const SparseVector& x, const SparseVector& y) const {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) accumulate(acc, a * b, bracket(i, j));
  return from_map(acc);
}

linalg::SparseMatrix LieAlgebra::ad(const SparseVector& x) const {
  std::vector<SparseVector> columns;
  for (std::size_t j = 0; j < dim(); ++j)
    columns.push_back(bracket(x, SparseVector{{static_cast<std::uint32_t>(j), Rational(1)}}));
  return linalg::SparseMatrix::from_columns(dim(), columns);
}

bool LieAlgebra::is_abelian() const {
  for (const auto& v : table_)
    if (!v.empty()) return false;
  return true;
}

std::size_t LieAlgebra::derived_dim() const {
  linalg::EchelonBasis span(dim());
  for (const auto& v : table_)
    if (!v.empty()) span.insert(v);
  return span.rank();
}

LieAlgebra abelian(std::size_t k) {
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < k; ++i) basis.push_back({"a" + std::to_string(i), 0});
  return LieAlgebra(std::move(basis), [](std::size_t, std::size_t) { return SparseVector{}; });
}

namespace {

/// [E_ij, E_kl] = delta_jk E_il - delta_li E_kj, returned as a map over gl(n) indices.
std::map<std::uint32_t, Rational> gl_bracket(std::size_t n, std::size_t a, std::size_t b) {
  const std::size_t i = a / n, j = a % n, k = b / n, l = b % n;
  std::map<std::uint32_t, Rational> m;
  if (j == k) m[static_cast<std::uint32_t>(i * n + l)] += 1;
  if (l == i) m[static_cast<std::uint32_t>(k * n + j)] -= 1;
  return m;
}

}  // namespace

LieAlgebra gl(std::size_t n) {
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis.push_back({"E" + std::to_string(i) + std::to_string(j), 0});
  return LieAlgebra(std::move(basis),
                    [n](std::size_t a, std::size_t b) { return from_map(gl_bracket(n, a, b)); });
}

LieAlgebra bgl(std::size_t m) {
  const std::size_t half = m * m;
  std::vector<BasisElement> basis;
  for (int imag = 0; imag < 2; ++imag)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        basis.push_back({std::string(imag ? "iE" : "E") + std::to_string(i) + std::to_string(j), 0});
  return LieAlgebra(std::move(basis), [m, half](std::size_t a, std::size_t b) {
    const bool ia = a >= half, ib = b >= half;
    auto base = gl_bracket(m, a % half, b % half);
    std::map<std::uint32_t, Rational> out;
    for (const auto& [k, c] : base) {
      if (ia && ib)
        out[k] -= c;  // [iA, iB] = -[A, B]
      else if (ia || ib)
        out[static_cast<std::uint32_t>(k + half)] += c;
      else
        out[k] += c;
    }
    return from_map(out);
  });
}

LieAlgebra direct_sum(const std::vector<LieAlgebra>& parts) {
  std::vector<BasisElement> basis;
  std::vector<std::size_t> owner, offset;
  std::size_t off = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (std::size_t i = 0; i < parts[p].dim(); ++i) {
      auto e = parts[p].basis()[i];
      if (parts.size() > 1) e.symbol += "[" + std::to_string(p) + "]";
      basis.push_back(e);
      owner.push_back(p);
      offset.push_back(off);
    }
    off += parts[p].dim();
  }
  return LieAlgebra(std::move(basis), [&](std::size_t a, std::size_t b) {
    if (owner[a] != owner[b]) return SparseVector{};
    SparseVector v = parts[owner[a]].bracket(a - offset[a], b - offset[b]);
    for (auto& [k, c] : v) k = static_cast<std::uint32_t>(k + offset[a]);
    return v;
  });
}

std::vector<SparseVector> o_span(std::size_t n) {
  std::vector<SparseVector> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.push_back({{static_cast<std::uint32_t>(i * n + j), Rational(1)},
                     {static_cast<std::uint32_t>(j * n + i), Rational(-1)}});
  return out;
}

std::vector<SparseVector> u_span(std::size_t m) {
  const std::size_t half = m * m;
  std::vector<SparseVector> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      out.push_back({{static_cast<std::uint32_t>(i * m + j), Rational(1)},
                     {static_cast<std::uint32_t>(j * m + i), Rational(-1)}});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      out.push_back({{static_cast<std::uint32_t>(half + i * m + j), Rational(1)},
                     {static_cast<std::uint32_t>(half + j * m + i), Rational(1)}});
  for (std::size_t i = 0; i < m; ++i) out.push_back({{static_cast<std::uint32_t>(half + i * m + i), Rational(1)}});
  return out;
}

std::optional<Vector> coordinates_in_span(const std::vector<SparseVector>& span, const SparseVector& w,
                                          std::size_t ambient_dim) {
  std::vector<SparseVector> columns = span;
  columns.push_back(w);
  const auto kernel = linalg::kernel_basis(linalg::SparseMatrix::from_columns(ambient_dim, columns));
  for (const auto& v : kernel) {
    if (is_zero(v.back())) continue;
    Vector c(span.size());
    for (std::size_t a = 0; a < span.size(); ++a) c[a] = -v[a] / v.back();
    return c;
  }
  if (w.empty()) return Vector(span.size());
  return std::nullopt;
}

LieAlgebra subalgebra(const LieAlgebra& g, const std::vector<SparseVector>& span,
                      const std::vector<std::string>& symbols) {
  linalg::EchelonBasis independent(g.dim());
  for (const auto& v : span) ensure(independent.insert(v), "subalgebra spanning vectors are dependent");
  std::vector<BasisElement> basis;
  for (std::size_t a = 0; a < span.size(); ++a)
    basis.push_back({a < symbols.size() ? symbols[a] : "k" + std::to_string(a), 0});
  return LieAlgebra(std::move(basis), [&](std::size_t a, std::size_t b) {
    const auto c = coordinates_in_span(span, g.bracket(span[a], span[b]), g.dim());
    if (!c) throw InputError("subalgebra is not closed under the bracket");
    return linalg::to_sparse(*c);
  });
}

}  // namespace gfc::lie
