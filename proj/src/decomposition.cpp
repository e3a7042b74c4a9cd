#include "gfc/decomposition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gfc/errors.hpp"
#include "gfc/parallel.hpp"

namespace gfc::rep {

using linalg::SparseMatrix;
using linalg::Vector;

std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

Field parse_field(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw InputError("field must be \"real\" or \"complex\", got \"" + s + "\"");
}

std::size_t Decomposition::ambient_dim() const {
  std::size_t n = dimV0 + mMinus1;
  for (const auto& f : factors) n += f.multiplicity * f.dim;
  return n;
}

void Decomposition::validate() const {
  if (field == Field::Complex) require(mMinus1 == 0, "mMinus1 is only meaningful over the reals");
  std::set<std::string> labels;
  for (const auto& f : factors) {
    require(!f.label.empty(), "factor label must be non-empty");
    require(labels.insert(f.label).second, "duplicate factor label \"" + f.label + "\"");
    require(f.multiplicity >= 1, "factor \"" + f.label + "\" has zero multiplicity");
    if (field == Field::Complex)
      require(f.dim >= 1, "complex factor \"" + f.label + "\" must have dim >= 1");
    else
      require(f.dim >= 2 && f.dim % 2 == 0,
              "real factor \"" + f.label + "\" must be of complex type (even real dim >= 2)");
  }
}

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t p = b.empty() ? 0 : b.front().size();
  Matrix c(n, Vector(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < p; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

Matrix power(const Matrix& a, std::size_t k) {
  Matrix result = identity_matrix(a.size());
  Matrix base = a;
  while (k) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return result;
}

bool is_identity(const Matrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

std::optional<std::size_t> matrix_order(const Matrix& a, std::size_t limit) {
  Matrix p = a;
  for (std::size_t k = 1; k <= limit; ++k) {
    if (is_identity(p)) return k;
    p = multiply(p, a);
  }
  return std::nullopt;
}

namespace {

SparseMatrix minus_identity(const Matrix& a) {
  Matrix m = a;
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= 1;
  return SparseMatrix::from_dense(m);
}

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

int mobius(std::size_t n) {
  int result = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

std::size_t euler_phi(std::size_t n) {
  std::size_t count = 0;
  for (std::size_t t = 1; t <= n; ++t)
    if (std::gcd(t, n) == 1) ++count;
  return count;
}

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

/// Canonical real rotation label: min(k, N - k).
std::size_t canonical_rotation(std::size_t k, std::size_t N) { return std::min(k, N - k); }

std::vector<Factor> factors_from_counts(const std::map<std::size_t, std::size_t>& counts, std::size_t dim) {
  std::vector<Factor> out;
  for (const auto& [k, m] : counts)
    if (m > 0) out.push_back({std::to_string(k), m, dim});
  return out;
}

Rational trace_of(const Matrix& a) {
  Rational t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

/// Negative index of inertia of a rational symmetric matrix, by congruence elimination.
std::size_t negative_index(Matrix a) {
  std::size_t negatives = 0;
  std::size_t n = a.size();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n && !pivot; ++i)
      if (!done[i] && !is_zero(a[i][i])) pivot = i;
    if (!pivot) {
      // Every remaining diagonal entry vanishes; mix in a row with an off-diagonal entry.
      for (std::size_t i = 0; i < n && !pivot; ++i)
        for (std::size_t j = 0; j < n && !pivot; ++j)
          if (!done[i] && !done[j] && i != j && !is_zero(a[i][j])) {
            for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
            for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
            pivot = i;
          }
      if (!pivot) break;
    }
    const std::size_t p = *pivot;
    done[p] = true;
    const Rational d = a[p][p];
    if (sgn(d) < 0) ++negatives;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || is_zero(a[i][p])) continue;
      const Rational f = a[i][p] / d;
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[p][j];
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!done[j]) a[p][j] = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) a[i][p] = 0;
  }
  return negatives;
}

Matrix matrix_from_vector(const Vector& v, std::size_t n) {
  Matrix m(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = v[i * n + j];
  return m;
}

}  // namespace

std::size_t fixed_dimension(const Matrix& a) { return a.size() - linalg::rank(minus_identity(a)); }

Matrix inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix m = a;
  Matrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m[p][c])) ++p;
    if (p == n) throw InputError("matrix is singular");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const Rational d = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || is_zero(m[i][c])) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Decomposition decompose_complex(std::size_t N, const std::vector<long long>& exponents) {
  require(N >= 1, "cyclic order must be positive");
  Decomposition d;
  d.field = Field::Complex;
  std::map<std::size_t, std::size_t> counts;
  for (long long k : exponents) {
    const auto r = static_cast<std::size_t>(mod(k, static_cast<long long>(N)));
    if (r == 0)
      ++d.dimV0;
    else
      ++counts[r];
  }
  d.factors = factors_from_counts(counts, 1);
  return d;
}

Decomposition decompose_real_cyclic(std::size_t N, const RealBlocks& blocks) {
  require(N >= 1, "cyclic order must be positive");
  Decomposition d;
  d.field = Field::Real;
  d.dimV0 = blocks.plus1;
  d.mMinus1 = blocks.minus1;
  std::size_t order = 1;
  if (blocks.minus1 > 0) order = 2;
  std::map<std::size_t, std::size_t> counts;
  for (long long k : blocks.rotations) {
    const auto r = static_cast<std::size_t>(mod(k, static_cast<long long>(N)));
    order = std::lcm(order, N / std::gcd(r, N));
    if (r == 0) {
      d.dimV0 += 2;
    } else if (2 * r == N) {
      d.mMinus1 += 2;
    } else {
      ++counts[canonical_rotation(r, N)];
    }
  }
  require(order == N || (order == 1 && N == 1),
          "generator has order " + std::to_string(order) + ", not the declared " + std::to_string(N));
  d.factors = factors_from_counts(counts, 2);
  return d;
}

Decomposition decompose_real_cyclic(std::size_t N, const Matrix& g) {
  require(N >= 1, "cyclic order must be positive");
  require(!g.empty(), "generator matrix must be non-empty");
  for (const auto& row : g) require(row.size() == g.size(), "generator matrix must be square");
  require(is_identity(power(g, N)), "generator does not satisfy g^N = I for N = " + std::to_string(N));
  for (std::size_t p = 2; p <= N; ++p) {
    if (N % p || mobius(p) != -1) continue;  // primes only
    require(!is_identity(power(g, N / p)), "generator has order smaller than " + std::to_string(N));
  }
  // f(e) = dim ker(g^e - I) = sum over d | e of the count of eigenvalues of exact order d.
  std::map<std::size_t, std::size_t> fixed;
  for (std::size_t e : divisors(N)) fixed[e] = fixed_dimension(power(g, e));
  Decomposition d;
  d.field = Field::Real;
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t dd : divisors(N)) {
    long long n_d = 0;
    for (std::size_t e : divisors(dd)) n_d += mobius(dd / e) * static_cast<long long>(fixed[e]);
    ensure(n_d >= 0, "negative eigenvalue count");
    if (dd == 1) {
      d.dimV0 = static_cast<std::size_t>(n_d);
    } else if (dd == 2) {
      d.mMinus1 = static_cast<std::size_t>(n_d);
    } else if (n_d > 0) {
      const std::size_t phi = euler_phi(dd);
      ensure(static_cast<std::size_t>(n_d) % phi == 0, "eigenvalues of a rational matrix must come in Galois orbits");
      for (std::size_t t = 1; t < dd; ++t)
        if (std::gcd(t, dd) == 1 && 2 * t < dd)
          counts[canonical_rotation(t * (N / dd), N)] += static_cast<std::size_t>(n_d) / phi;
    }
  }
  d.factors = factors_from_counts(counts, 2);
  ensure(d.ambient_dim() == g.size(), "eigenvalue bookkeeping does not add up to the dimension");
  return d;
}

FiniteMatrixGroup::FiniteMatrixGroup(std::vector<Matrix> elements, std::size_t max_order) {
  require(!elements.empty(), "group must have at least one element");
  require(elements.size() <= max_order, "group order exceeds the enumeration bound " + std::to_string(max_order));
  const std::size_t n = elements.front().size();
  require(n >= 1, "matrices must be at least 1x1");
  for (const auto& m : elements) {
    require(m.size() == n, "all matrices must have the same size");
    for (const auto& row : m) require(row.size() == n, "matrices must be square");
    require(linalg::rank(SparseMatrix::from_dense(m)) == n, "group matrices must be invertible");
  }
  std::vector<std::size_t> orders;
  for (const auto& m : elements) {
    auto o = matrix_order(m, elements.size());
    require(o.has_value(), "element order exceeds the list size; the list is not a group");
    orders.push_back(*o);
  }
  std::vector<std::size_t> perm(elements.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (orders[a] != orders[b]) return orders[a] < orders[b];
    return elements[a] < elements[b];
  });
  for (auto i : perm) {
    elements_.push_back(elements[i]);
    orders_.push_back(orders[i]);
  }
  for (std::size_t i = 1; i < elements_.size(); ++i)
    require(elements_[i] != elements_[i - 1], "duplicate matrices in the group list");

  std::map<Matrix, std::size_t> index;
  for (std::size_t i = 0; i < elements_.size(); ++i) index[elements_[i]] = i;
  const std::size_t order = elements_.size();
  table_.assign(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      auto it = index.find(multiply(elements_[a], elements_[b]));
      require(it != index.end(), "matrix list is not closed under multiplication");
      table_[a][b] = it->second;
    }
  ensure(is_identity(elements_.front()), "identity must sort first");
  inverse_.assign(order, 0);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      if (table_[a][b] == 0) inverse_[a] = b;
}

std::size_t FiniteMatrixGroup::index_of(const Matrix& m) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == m) return i;
  throw InputError("matrix is not an element of the group");
}

bool FiniteMatrixGroup::is_cyclic() const { return orders_[generator()] == order(); }

std::size_t FiniteMatrixGroup::generator() const {
  // First element of maximal order in the sorted list: a canonical choice.
  const std::size_t best = *std::max_element(orders_.begin(), orders_.end());
  for (std::size_t i = 0; i < orders_.size(); ++i)
    if (orders_[i] == best) return i;
  return 0;
}

std::vector<ConjugacyClass> FiniteMatrixGroup::conjugacy_classes() const {
  std::vector<ConjugacyClass> out;
  std::vector<bool> seen(order(), false);
  for (std::size_t x = 0; x < order(); ++x) {
    if (seen[x]) continue;
    std::set<std::size_t> members;
    for (std::size_t h = 0; h < order(); ++h) members.insert(product(product(h, x), inverse_[h]));
    ConjugacyClass c;
    c.representative = elements_[x];
    c.order = orders_[x];
    c.members.assign(members.begin(), members.end());
    c.size = members.size();
    ensure(order() % c.size == 0, "class size does not divide the group order");
    c.centralizer_order = order() / c.size;
    std::size_t centralizer = 0;
    for (std::size_t h = 0; h < order(); ++h)
      if (product(h, x) == product(x, h)) ++centralizer;
    ensure(centralizer == c.centralizer_order, "orbit-stabilizer failed for a conjugacy class");
    for (auto m : members) seen[m] = true;
    out.push_back(std::move(c));
  }
  std::size_t total = 0;
  for (const auto& c : out) total += c.size;
  ensure(total == order(), "class equation failed");
  return out;
}

bool has_quaternionic_constituent(const FiniteMatrixGroup& g) {
  const std::size_t n = g.dim();
  // Commutant E = {X : Xh = hX}.
  std::vector<linalg::Entry> eqs;
  std::size_t row = 0;
  for (const auto& h : g.elements()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++row)
        for (std::size_t k = 0; k < n; ++k) {
          // (Xh)_{ij} = sum_k X_{ik} h_{kj};  (hX)_{ij} = sum_k h_{ik} X_{kj}
          if (!is_zero(h[k][j])) eqs.push_back({row, i * n + k, h[k][j]});
          if (!is_zero(h[i][k])) eqs.push_back({row, k * n + j, -h[i][k]});
        }
  }
  std::vector<Matrix> commutant;
  for (const auto& v : linalg::kernel_basis(SparseMatrix::from_entries(row, n * n, std::move(eqs))))
    commutant.push_back(matrix_from_vector(v, n));
  // Center of E, in coordinates over the commutant basis.
  const std::size_t e = commutant.size();
  std::vector<linalg::Entry> ceqs;
  row = 0;
  for (std::size_t b = 0; b < e; ++b) {
    std::vector<Matrix> brackets;
    for (std::size_t a = 0; a < e; ++a) {
      Matrix ab = multiply(commutant[a], commutant[b]);
      const Matrix ba = multiply(commutant[b], commutant[a]);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ab[i][j] -= ba[i][j];
      brackets.push_back(std::move(ab));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++row)
        for (std::size_t a = 0; a < e; ++a)
          if (!is_zero(brackets[a][i][j])) ceqs.push_back({row, a, brackets[a][i][j]});
  }
  std::vector<Matrix> center;
  for (const auto& c : linalg::kernel_basis(SparseMatrix::from_entries(row, e, std::move(ceqs)))) {
    Matrix z(n, Vector(n));
    for (std::size_t a = 0; a < e; ++a)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) z[i][j] += c[a] * commutant[a][i][j];
    center.push_back(std::move(z));
  }
  // S = sum of squares; B(x) = tr(x S) / |G| weighs real-type blocks positively, complex-type by 0
  // and quaternionic blocks negatively, so B(xy) on the center has a negative direction iff H occurs.
  Matrix s(n, Vector(n));
  for (std::size_t h = 0; h < g.order(); ++h) {
    const auto& sq = g.elements()[g.product(h, h)];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s[i][j] += sq[i][j];
  }
  const std::size_t zc = center.size();
  Matrix gram(zc, Vector(zc));
  for (std::size_t a = 0; a < zc; ++a)
    for (std::size_t b = a; b < zc; ++b) {
      gram[a][b] = gram[b][a] = trace_of(multiply(multiply(center[a], center[b]), s)) / Rational(g.order());
    }
  return negative_index(gram) > 0;
}

Decomposition decompose_real_group(const FiniteMatrixGroup& g) {
  if (g.is_cyclic()) return decompose_real_cyclic(g.order(), g.elements()[g.generator()]);
  if (has_quaternionic_constituent(g))
    throw QuaternionicError(
        "the action has a quaternionic-type real irreducible; the theory assumes cyclic isotropy, "
        "which rules out the quaternions");
  throw InputError(
      "non-cyclic group without quaternionic constituents: isotypic data is not computed automatically; "
      "supply a Decomposition document (optionally with \"beyondHypothesis\": true)");
}

std::vector<InertiaComponent> inertia_components(const FiniteMatrixGroup& g, unsigned jobs) {
  const auto classes = g.conjugacy_classes();
  std::vector<InertiaComponent> out(classes.size());
  parallel_for(classes.size(), jobs, [&](std::size_t i) {
    const auto& c = classes[i];
    InertiaComponent comp;
    comp.representative = c.representative;
    comp.element_order = c.order;
    comp.class_size = c.size;
    comp.centralizer_order = c.centralizer_order;
    comp.fixed_dim = fixed_dimension(c.representative);
    comp.decomposition = decompose_real_cyclic(c.order, c.representative);
    ensure(comp.fixed_dim == comp.decomposition.dimV0, "fixed dimension disagrees with dimV0");
    ensure(comp.class_size * comp.centralizer_order == g.order(), "class size times centralizer order != |G|");
    out[i] = std::move(comp);
  });
  return out;
}

Decomposition complexify(const Decomposition& real, std::size_t N) {
  require(real.field == Field::Real, "complexify expects a real decomposition");
  Decomposition c;
  c.field = Field::Complex;
  c.dimV0 = real.dimV0;
  std::map<std::size_t, std::size_t> counts;
  if (real.mMinus1 > 0) {
    require(N % 2 == 0, "a -1 eigenvalue needs even order");
    counts[N / 2] += real.mMinus1;
  }
  for (const auto& f : real.factors) {
    const std::size_t k = std::stoul(f.label);
    counts[k] += f.multiplicity * (f.dim / 2);
    counts[N - k] += f.multiplicity * (f.dim / 2);
  }
  c.factors = factors_from_counts(counts, 1);
  return c;
}

}  // namespace gfc::rep
