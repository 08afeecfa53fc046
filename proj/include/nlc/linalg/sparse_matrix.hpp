#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "nlc/core/vector.hpp"

namespace nlc {

/// Square matrix in compressed sparse row storage. Column indices are strictly increasing
/// within each row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  /// Validates the CSR arrays; throws std::invalid_argument on malformed input.
  SparseMatrix(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<std::size_t> cols,
               std::vector<double> values, std::size_t block_size = 1);

  static SparseMatrix identity(std::size_t n);
  /// Row-major dense input; exact zeros are dropped.
  static SparseMatrix from_dense(std::size_t n, const std::vector<double>& dense);

  std::size_t rows() const { return n_; }
  std::size_t nnz() const { return values_.size(); }
  std::size_t block_size() const { return block_size_; }
  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& cols() const { return cols_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Entry (i, j), zero when not stored.
  double at(std::size_t i, std::size_t j) const;
  double max_abs() const;
  std::size_t lower_bandwidth() const;
  std::size_t upper_bandwidth() const;

  /// y = A x. The result takes x's layout.
  Vector multiply(const Vector& x) const;
  void multiply(const double* x, double* y) const;

  /// Principal submatrix on the given (sorted, unique) index set.
  SparseMatrix submatrix(const std::vector<std::size_t>& index) const;
  SparseMatrix transpose() const;
  std::vector<double> to_dense() const;

  /// Marks the matrix as symmetric after checking the pattern and values to `tol`
  /// (relative to max|A|). Throws std::invalid_argument when the check fails.
  void mark_symmetric(double tol = 1e-12);
  bool is_marked_symmetric() const { return symmetric_; }
  /// max |A - A^T|.
  double asymmetry() const;

  /// Writes "%%MatrixMarket matrix coordinate real general" with 1-based indices.
  void write_matrix_market(std::ostream& out) const;

 private:
  std::size_t n_ = 0;
  std::size_t block_size_ = 1;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
  bool symmetric_ = false;
};

Vector spmv(const SparseMatrix& a, const Vector& x);

/// Accumulates (row, col, value) triplets; duplicates are summed on build.
class TripletBuilder {
 public:
  explicit TripletBuilder(std::size_t n, std::size_t reserve = 0);
  void add(std::size_t i, std::size_t j, double v);
  SparseMatrix build(std::size_t block_size = 1) const;

 private:
  struct Entry {
    std::size_t i, j;
    double v;
  };
  std::size_t n_;
  std::vector<Entry> entries_;
};

}  // namespace nlc
