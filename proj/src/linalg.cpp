#include "gfc/linalg.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "gfc/errors.hpp"
#include "gfc/parallel.hpp"

namespace gfc::linalg {

SparseVector to_sparse(const Vector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return out;
}

Vector to_dense(const SparseVector& v, std::size_t dim) {
  Vector out(dim);
  for (const auto& [i, x] : v) out.at(i) = x;
  return out;
}

void axpy(SparseVector& a, const Rational& factor, const SparseVector& b) {
  if (is_zero(factor) || b.empty()) return;
  SparseVector out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(std::move(*ia++));
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, factor * ib->second);
      ++ib;
    } else {
      Rational s = ia->second + factor * ib->second;
      if (!is_zero(s)) out.emplace_back(ia->first, std::move(s));
      ++ia;
      ++ib;
    }
  }
  a = std::move(out);
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::from_entries(std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
  for (const auto& e : entries)
    if (e.row >= rows || e.col >= cols)
      throw InvariantViolation("matrix entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                               ") out of range");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return std::tie(x.row, x.col) < std::tie(y.row, y.col); });
  SparseMatrix m(rows, cols);
  for (auto& e : entries) {
    if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
      m.entries_.back().value += e.value;
    } else {
      if (!m.entries_.empty() && gfc::is_zero(m.entries_.back().value)) m.entries_.pop_back();
      m.entries_.push_back(std::move(e));
    }
  }
  if (!m.entries_.empty() && gfc::is_zero(m.entries_.back().value)) m.entries_.pop_back();
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<Vector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ensure(rows[i].size() == cols, "ragged dense matrix");
    for (std::size_t j = 0; j < cols; ++j)
      if (!gfc::is_zero(rows[i][j])) entries.push_back({i, j, rows[i][j]});
  }
  return from_entries(rows.size(), cols, std::move(entries));
}

SparseMatrix SparseMatrix::from_rows(std::size_t cols, const std::vector<SparseVector>& rows) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, x] : rows[i]) entries.push_back({i, j, x});
  return from_entries(rows.size(), cols, std::move(entries));
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, const std::vector<SparseVector>& columns) {
  std::vector<Entry> entries;
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, x] : columns[j]) entries.push_back({i, j, x});
  return from_entries(rows, columns.size(), std::move(entries));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, Rational(1)});
  return from_entries(n, n, std::move(entries));
}

Rational SparseMatrix::at(std::size_t row, std::size_t col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                             [](const Entry& e, const std::pair<std::size_t, std::size_t>& key) {
                               return std::tie(e.row, e.col) < std::tie(key.first, key.second);
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return Rational(0);
}

std::vector<SparseVector> SparseMatrix::row_vectors() const {
  std::vector<SparseVector> out(rows_);
  for (const auto& e : entries_) out[e.row].emplace_back(static_cast<std::uint32_t>(e.col), e.value);
  return out;
}

std::vector<SparseVector> SparseMatrix::column_vectors() const {
  std::vector<SparseVector> out(cols_);
  for (const auto& e : entries_) out[e.col].emplace_back(static_cast<std::uint32_t>(e.row), e.value);
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Entry> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) entries.push_back({e.col, e.row, e.value});
  return from_entries(cols_, rows_, std::move(entries));
}

Vector SparseMatrix::apply(const Vector& x) const {
  ensure(x.size() == cols_, "matrix-vector shape mismatch");
  Vector y(rows_);
  for (const auto& e : entries_) y[e.row] += e.value * x[e.col];
  return y;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  ensure(a.cols() == b.rows(), "matrix product shape mismatch");
  const auto brows = b.row_vectors();
  std::vector<Entry> entries;
  std::vector<Rational> acc(b.cols());
  std::vector<bool> touched(b.cols(), false);
  std::vector<std::size_t> touched_list;
  std::size_t k = 0;
  const auto& ae = a.entries();
  while (k < ae.size()) {
    const std::size_t row = ae[k].row;
    for (; k < ae.size() && ae[k].row == row; ++k) {
      for (const auto& [j, x] : brows[ae[k].col]) {
        if (!touched[j]) {
          touched[j] = true;
          touched_list.push_back(j);
        }
        acc[j] += ae[k].value * x;
      }
    }
    for (auto j : touched_list) {
      if (!is_zero(acc[j])) entries.push_back({row, j, acc[j]});
      acc[j] = 0;
      touched[j] = false;
    }
    touched_list.clear();
  }
  return SparseMatrix::from_entries(a.rows(), b.cols(), std::move(entries));
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

SparseMatrix stack_rows(const std::vector<SparseMatrix>& blocks, std::size_t cols) {
  std::vector<Entry> entries;
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    ensure(b.cols() == cols, "stack_rows: column count mismatch");
    for (const auto& e : b.entries()) entries.push_back({e.row + offset, e.col, e.value});
    offset += b.rows();
  }
  return SparseMatrix::from_entries(offset, cols, std::move(entries));
}

void EchelonBasis::reduce_leading(SparseVector& v) const {
  while (!v.empty()) {
    const auto p = pivot_row_[v.front().first];
    if (p < 0) return;
    const Rational factor = -v.front().second;
    axpy(v, factor, rows_[static_cast<std::size_t>(p)]);
  }
}

bool EchelonBasis::insert(SparseVector v) {
  reduce_leading(v);
  if (v.empty()) return false;
  const Rational lead = v.front().second;
  for (auto& [i, x] : v) x /= lead;
  pivot_row_[v.front().first] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

bool EchelonBasis::contains(SparseVector v) const {
  reduce_leading(v);
  return v.empty();
}

namespace {

/// Forward elimination; returns normalized echelon rows (leading coefficient 1).
std::vector<SparseVector> echelon_rows(std::vector<SparseVector> rows, std::size_t dim) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SparseVector& x, const SparseVector& y) { return x.size() < y.size(); });
  std::vector<SparseVector> pivots;
  std::vector<std::int64_t> pivot_of(dim, -1);
  for (auto& v : rows) {
    while (!v.empty()) {
      const auto p = pivot_of[v.front().first];
      if (p < 0) break;
      const Rational factor = -v.front().second;
      axpy(v, factor, pivots[static_cast<std::size_t>(p)]);
    }
    if (v.empty()) continue;
    const Rational lead = v.front().second;
    for (auto& [i, x] : v) x /= lead;
    pivot_of[v.front().first] = static_cast<std::int64_t>(pivots.size());
    pivots.push_back(std::move(v));
  }
  return pivots;
}

std::size_t max_index_plus_one(const std::vector<SparseVector>& rows) {
  std::size_t dim = 0;
  for (const auto& r : rows)
    if (!r.empty()) dim = std::max<std::size_t>(dim, r.back().first + 1);
  return dim;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  if (m.is_zero()) return 0;
  // Eliminate along the shorter side.
  if (m.rows() > m.cols()) return echelon_rows(m.column_vectors(), m.rows()).size();
  return echelon_rows(m.row_vectors(), m.cols()).size();
}

std::vector<SparseVector> reduced_row_echelon(std::vector<SparseVector> rows) {
  const std::size_t dim = max_index_plus_one(rows);
  auto r = echelon_rows(std::move(rows), dim);
  std::sort(r.begin(), r.end(),
            [](const SparseVector& x, const SparseVector& y) { return x.front().first < y.front().first; });
  for (std::size_t i = r.size(); i-- > 0;) {
    const auto pivot = r[i].front().first;
    for (std::size_t j = 0; j < i; ++j) {
      auto it = std::lower_bound(r[j].begin(), r[j].end(), pivot,
                                 [](const auto& e, std::uint32_t key) { return e.first < key; });
      if (it == r[j].end() || it->first != pivot) continue;
      const Rational factor = -it->second;
      axpy(r[j], factor, r[i]);
    }
  }
  return r;
}

std::vector<SparseVector> kernel_basis_sparse(const SparseMatrix& m) {
  const auto rref = reduced_row_echelon(m.row_vectors());
  std::vector<std::int64_t> pivot_row(m.cols(), -1);
  for (std::size_t i = 0; i < rref.size(); ++i) pivot_row[rref[i].front().first] = static_cast<std::int64_t>(i);
  std::vector<std::int64_t> free_slot(m.cols(), -1);
  std::vector<SparseVector> kernel;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (pivot_row[c] >= 0) continue;
    free_slot[c] = static_cast<std::int64_t>(kernel.size());
    kernel.push_back({{static_cast<std::uint32_t>(c), Rational(1)}});
  }
  for (const auto& row : rref) {
    const auto pivot = row.front().first;
    for (std::size_t k = 1; k < row.size(); ++k) {
      const auto slot = free_slot[row[k].first];
      ensure(slot >= 0, "reduced echelon form has a pivot column entry off the pivot");
      kernel[static_cast<std::size_t>(slot)].emplace_back(pivot, -row[k].second);
    }
  }
  for (auto& v : kernel)
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return kernel;
}

std::vector<Vector> kernel_basis(const SparseMatrix& m) {
  std::vector<Vector> out;
  for (const auto& v : kernel_basis_sparse(m)) out.push_back(to_dense(v, m.cols()));
  return out;
}

std::vector<std::size_t> BettiTable::known_prefix(std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < n; ++q) {
    if (!at(q)) throw InvariantViolation("Betti number in degree " + std::to_string(q) + " is unknown");
    out.push_back(*at(q));
  }
  return out;
}

ChainComplexSlice::ChainComplexSlice(std::vector<std::size_t> dims, std::vector<SparseMatrix> differentials)
    : dims_(std::move(dims)), differentials_(std::move(differentials)) {
  ensure(!dims_.empty(), "chain complex slice needs at least degree 0");
  ensure(differentials_.size() == dims_.size() - 1, "chain complex slice: need one differential per degree below top");
  for (std::size_t q = 0; q < differentials_.size(); ++q) {
    const auto& d = differentials_[q];
    ensure(d.cols() == dims_[q] && d.rows() == dims_[q + 1],
           "chain complex slice: d_" + std::to_string(q) + " has the wrong shape");
  }
  for (std::size_t q = 0; q + 1 < differentials_.size(); ++q)
    ensure((differentials_[q + 1] * differentials_[q]).is_zero(),
           "d_" + std::to_string(q + 1) + " d_" + std::to_string(q) + " != 0");
}

BettiTable cohomology_dims(const ChainComplexSlice& c, bool with_representatives, unsigned jobs) {
  const auto& d = c.differentials();
  const std::size_t top = c.top_degree();
  std::vector<std::size_t> ranks(d.size());
  parallel_for(d.size(), jobs, [&](std::size_t q) { ranks[q] = rank(d[q]); });

  BettiTable table;
  table.betti.assign(top + 1, std::nullopt);
  for (std::size_t q = 0; q < top; ++q) {
    const std::size_t below = q == 0 ? 0 : ranks[q - 1];
    table.betti[q] = c.dims()[q] - ranks[q] - below;
  }
  if (!with_representatives) return table;

  table.representatives.assign(top + 1, {});
  parallel_for(top, jobs, [&](std::size_t q) {
    EchelonBasis span(c.dims()[q]);
    if (q > 0)
      for (auto& col : d[q - 1].column_vectors()) span.insert(std::move(col));
    for (auto& z : kernel_basis_sparse(d[q]))
      if (span.insert(z)) table.representatives[q].push_back(to_dense(z, c.dims()[q]));
    ensure(table.representatives[q].size() == *table.betti[q], "representative count disagrees with Betti number");
  });
  return table;
}

}  // namespace gfc::linalg
