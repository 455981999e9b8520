#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace dstokes {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed sparse row matrix. Column indices are sorted and unique within
/// each row; duplicate triplets are summed on construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<Triplet> triplets);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<int>& row_offsets() const { return row_ptr_; }
  const std::vector<int>& column_indices() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  /// Entry (i, j), zero if not stored.
  double operator()(int i, int j) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;
  /// y = A^T x
  std::vector<double> multiply_transposed(std::span<const double> x) const;

  SparseMatrix transposed() const;
  std::vector<Triplet> to_triplets() const;

  /// max |A_ij - A_ji|
  double asymmetry() const;

  /// Coordinate text dump: header `rows cols nnz`, then one `row col value` line per stored entry.
  void write_coordinate(std::ostream& os) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

}  // namespace dstokes
