#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilquat/gauss_rat.hpp"

namespace nilquat {

using ExactVector = std::vector<GaussRat>;
// Sorted by column, no explicit zeros.
using SparseRow = std::vector<std::pair<std::size_t, GaussRat>>;

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<ExactVector>& rows);
  static ExactMatrix from_columns(const std::vector<ExactVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  const GaussRat& at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const GaussRat& v);
  void add_to(std::size_t r, std::size_t c, const GaussRat& v);
  const std::map<std::size_t, GaussRat>& row(std::size_t r) const { return rows_.at(r); }
  SparseRow sparse_row(std::size_t r) const;
  ExactVector column(std::size_t c) const;
  bool is_zero() const;

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  void set_labels(std::vector<std::string> row_labels, std::vector<std::string> col_labels);

  ExactVector apply(const ExactVector& v) const;
  ExactMatrix transpose() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const GaussRat& s, const ExactMatrix& a);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

 private:
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, GaussRat>> rows_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

// Incremental Gauss-Jordan reduction. Pivot rows are kept normalized (pivot
// entry 1) and fully reduced against each other; the pivot of a new row is
// the leftmost nonzero entry after reduction.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : cols_(cols) {}

  // Returns true if the row was independent of the rows added so far.
  bool add(const SparseRow& row);
  bool add(const ExactVector& row);
  // The row reduced against the current pivots (zero iff in the span).
  SparseRow reduce(const SparseRow& row) const;
  bool in_span(const ExactVector& row) const;

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  // Pivot column of each pivot row, in insertion order.
  const std::vector<std::size_t>& pivot_columns() const { return pivot_cols_; }
  const SparseRow& pivot_row(std::size_t k) const { return pivots_[k]; }
  std::optional<std::size_t> pivot_index_of_column(std::size_t c) const;

 private:
  std::size_t cols_;
  std::vector<SparseRow> pivots_;
  std::vector<std::size_t> pivot_cols_;
  std::map<std::size_t, std::size_t> col_to_pivot_;
};

std::size_t rank(const ExactMatrix& m);
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);
// std::nullopt means no solution; throws std::invalid_argument on size mismatch.
std::optional<ExactVector> solve(const ExactMatrix& m, const ExactVector& b);
// Reduced basis of the span of the given vectors.
std::vector<ExactVector> row_space_basis(const std::vector<ExactVector>& vectors, std::size_t dim);
std::size_t rank_of(const std::vector<ExactVector>& vectors, std::size_t dim);
// True iff span(a) == span(b).
bool same_span(const std::vector<ExactVector>& a, const std::vector<ExactVector>& b, std::size_t dim);

bool is_zero_vector(const ExactVector& v);
ExactVector unit_vector(std::size_t n, std::size_t i);

}  // namespace nilquat
