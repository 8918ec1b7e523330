#include "nilquat/linalg.hpp"

#include <stdexcept>

namespace nilquat {

namespace {

const GaussRat kZero{};

// y += a * x
void axpy(SparseRow& y, const GaussRat& a, const SparseRow& x) {
  SparseRow out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
      out.push_back(std::move(*iy++));
    } else if (iy == y.end() || ix->first < iy->first) {
      out.emplace_back(ix->first, a * ix->second);
      ++ix;
    } else {
      GaussRat v = iy->second + a * ix->second;
      if (!v.is_zero()) out.emplace_back(iy->first, std::move(v));
      ++iy;
      ++ix;
    }
  }
  y = std::move(out);
}

SparseRow to_sparse(const ExactVector& v) {
  SparseRow r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r.emplace_back(i, v[i]);
  return r;
}

}  // namespace

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {
  row_labels_.resize(rows);
  col_labels_.resize(cols);
  for (std::size_t i = 0; i < rows; ++i) row_labels_[i] = "r" + std::to_string(i);
  for (std::size_t j = 0; j < cols; ++j) col_labels_[j] = "c" + std::to_string(j);
}

ExactMatrix::ExactMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels)
    : cols_(col_labels.size()),
      rows_(row_labels.size()),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<ExactVector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<ExactVector>& cols, std::size_t rows) {
  ExactMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

const GaussRat& ExactMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows() || c >= cols_) throw std::out_of_range("matrix index");
  auto it = rows_[r].find(c);
  return it == rows_[r].end() ? kZero : it->second;
}

void ExactMatrix::set(std::size_t r, std::size_t c, const GaussRat& v) {
  if (r >= rows() || c >= cols_) throw std::out_of_range("matrix index");
  if (v.is_zero())
    rows_[r].erase(c);
  else
    rows_[r][c] = v;
}

void ExactMatrix::add_to(std::size_t r, std::size_t c, const GaussRat& v) {
  if (v.is_zero()) return;
  if (r >= rows() || c >= cols_) throw std::out_of_range("matrix index");
  auto [it, inserted] = rows_[r].emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) rows_[r].erase(it);
  }
}

SparseRow ExactMatrix::sparse_row(std::size_t r) const {
  const auto& row = rows_.at(r);
  return SparseRow(row.begin(), row.end());
}

ExactVector ExactMatrix::column(std::size_t c) const {
  ExactVector v(rows());
  for (std::size_t r = 0; r < rows(); ++r) v[r] = at(r, c);
  return v;
}

bool ExactMatrix::is_zero() const {
  for (const auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

void ExactMatrix::set_labels(std::vector<std::string> row_labels, std::vector<std::string> col_labels) {
  if (row_labels.size() != rows() || col_labels.size() != cols_)
    throw std::invalid_argument("label count mismatch");
  row_labels_ = std::move(row_labels);
  col_labels_ = std::move(col_labels);
}

ExactVector ExactMatrix::apply(const ExactVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in apply");
  ExactVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (const auto& [c, x] : rows_[r])
      if (!v[c].is_zero()) out[r] += x * v[c];
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(col_labels_, row_labels_);
  for (std::size_t r = 0; r < rows(); ++r)
    for (const auto& [c, x] : rows_[r]) t.set(c, r, x);
  return t;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in product");
  ExactMatrix p(a.row_labels_, b.col_labels_);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& [k, x] : a.rows_[r])
      for (const auto& [c, y] : b.rows_[k]) p.add_to(r, c, x * y);
  return p;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch in sum");
  ExactMatrix s = a;
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (const auto& [c, y] : b.rows_[r]) s.add_to(r, c, y);
  return s;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) { return a + GaussRat(-1) * b; }

ExactMatrix operator*(const GaussRat& s, const ExactMatrix& a) {
  ExactMatrix p(a.row_labels_, a.col_labels_);
  if (s.is_zero()) return p;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& [c, x] : a.rows_[r]) p.set(r, c, s * x);
  return p;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

SparseRow RowReducer::reduce(const SparseRow& row) const {
  SparseRow acc = row;
  for (const auto& [c, v] : row) {
    auto it = col_to_pivot_.find(c);
    if (it == col_to_pivot_.end()) continue;
    // Pivot rows vanish on every other pivot column, so v is still the
    // current entry of acc at column c.
    axpy(acc, -v, pivots_[it->second]);
  }
  return acc;
}

bool RowReducer::add(const SparseRow& row) {
  for (const auto& e : row)
    if (e.first >= cols_) throw std::out_of_range("row entry beyond column count");
  SparseRow r = reduce(row);
  if (r.empty()) return false;
  std::size_t pc = r.front().first;
  GaussRat lead = r.front().second;
  if (!lead.is_one())
    for (auto& e : r) e.second /= lead;
  for (auto& p : pivots_) {
    for (const auto& e : p) {
      if (e.first == pc) {
        GaussRat f = -e.second;
        axpy(p, f, r);
        break;
      }
      if (e.first > pc) break;
    }
  }
  col_to_pivot_[pc] = pivots_.size();
  pivot_cols_.push_back(pc);
  pivots_.push_back(std::move(r));
  return true;
}

bool RowReducer::add(const ExactVector& row) {
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  return add(to_sparse(row));
}

bool RowReducer::in_span(const ExactVector& row) const {
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  return reduce(to_sparse(row)).empty();
}

std::optional<std::size_t> RowReducer::pivot_index_of_column(std::size_t c) const {
  auto it = col_to_pivot_.find(c);
  if (it == col_to_pivot_.end()) return std::nullopt;
  return it->second;
}

std::size_t rank(const ExactMatrix& m) {
  RowReducer red(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) red.add(m.sparse_row(r));
  return red.rank();
}

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  RowReducer red(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) red.add(m.sparse_row(r));
  std::vector<ExactVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (red.pivot_index_of_column(f)) continue;
    ExactVector v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < red.rank(); ++k) {
      for (const auto& [c, x] : red.pivot_row(k)) {
        if (c == f) {
          v[red.pivot_columns()[k]] = -x;
          break;
        }
        if (c > f) break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<ExactVector> solve(const ExactMatrix& m, const ExactVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length does not match row count");
  const std::size_t n = m.cols();
  RowReducer red(n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow row = m.sparse_row(r);
    if (!b[r].is_zero()) row.emplace_back(n, b[r]);
    red.add(row);
  }
  if (red.pivot_index_of_column(n)) return std::nullopt;
  ExactVector x(n);
  for (std::size_t k = 0; k < red.rank(); ++k) {
    const SparseRow& p = red.pivot_row(k);
    if (!p.empty() && p.back().first == n) x[red.pivot_columns()[k]] = p.back().second;
  }
  return x;
}

std::vector<ExactVector> row_space_basis(const std::vector<ExactVector>& vectors, std::size_t dim) {
  RowReducer red(dim);
  for (const auto& v : vectors) red.add(v);
  std::vector<ExactVector> out;
  for (std::size_t k = 0; k < red.rank(); ++k) {
    ExactVector v(dim);
    for (const auto& [c, x] : red.pivot_row(k)) v[c] = x;
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t rank_of(const std::vector<ExactVector>& vectors, std::size_t dim) {
  RowReducer red(dim);
  for (const auto& v : vectors) red.add(v);
  return red.rank();
}

bool same_span(const std::vector<ExactVector>& a, const std::vector<ExactVector>& b, std::size_t dim) {
  std::size_t ra = rank_of(a, dim);
  if (ra != rank_of(b, dim)) return false;
  std::vector<ExactVector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank_of(both, dim) == ra;
}

bool is_zero_vector(const ExactVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

ExactVector unit_vector(std::size_t n, std::size_t i) {
  ExactVector v(n);
  v.at(i) = 1;
  return v;
}

}  // namespace nilquat
