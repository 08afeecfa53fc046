#include "nlc/linalg/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace nlc {

SparseMatrix::SparseMatrix(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<std::size_t> cols,
                           std::vector<double> values, std::size_t block_size)
    : n_(n),
      block_size_(block_size),
      row_ptr_(std::move(row_ptr)),
      cols_(std::move(cols)),
      values_(std::move(values)) {
  if (row_ptr_.size() != n_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != cols_.size() ||
      cols_.size() != values_.size()) {
    throw std::invalid_argument("SparseMatrix: inconsistent CSR arrays");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) throw std::invalid_argument("SparseMatrix: row offsets decrease");
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (cols_[k] >= n_) {
        throw std::invalid_argument("SparseMatrix: column index out of range in row " + std::to_string(i));
      }
      if (k > row_ptr_[i] && cols_[k] <= cols_[k - 1]) {
        throw std::invalid_argument("SparseMatrix: column indices not increasing in row " + std::to_string(i));
      }
    }
  }
  if (block_size_ == 0 || n_ % block_size_ != 0) throw std::invalid_argument("SparseMatrix: bad block size");
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::size_t> rp(n + 1), cols(n);
  for (std::size_t i = 0; i <= n; ++i) rp[i] = i;
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return SparseMatrix(n, std::move(rp), std::move(cols), std::vector<double>(n, 1.0));
}

SparseMatrix SparseMatrix::from_dense(std::size_t n, const std::vector<double>& dense) {
  if (dense.size() != n * n) throw std::invalid_argument("from_dense: expected n*n entries");
  std::vector<std::size_t> rp{0}, cols;
  std::vector<double> vals;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dense[i * n + j] != 0.0) {
        cols.push_back(j);
        vals.push_back(dense[i * n + j]);
      }
    }
    rp.push_back(cols.size());
  }
  return SparseMatrix(n, std::move(rp), std::move(cols), std::move(vals));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  auto it = std::lower_bound(begin, end, j);
  if (it != end && *it == j) return values_[static_cast<std::size_t>(it - cols_.begin())];
  return 0.0;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::size_t SparseMatrix::lower_bandwidth() const {
  std::size_t b = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (row_ptr_[i] < row_ptr_[i + 1] && cols_[row_ptr_[i]] < i) b = std::max(b, i - cols_[row_ptr_[i]]);
  }
  return b;
}

std::size_t SparseMatrix::upper_bandwidth() const {
  std::size_t b = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (row_ptr_[i] < row_ptr_[i + 1] && cols_[row_ptr_[i + 1] - 1] > i) {
      b = std::max(b, cols_[row_ptr_[i + 1] - 1] - i);
    }
  }
  return b;
}

void SparseMatrix::multiply(const double* x, double* y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[cols_[k]];
    y[i] = s;
  }
}

Vector SparseMatrix::multiply(const Vector& x) const {
  if (x.size() != n_) {
    throw std::invalid_argument("spmv: matrix order " + std::to_string(n_) + " vs vector length " +
                                std::to_string(x.size()));
  }
  Vector y(x.layout());
  multiply(x.data(), y.data());
  return y;
}

Vector spmv(const SparseMatrix& a, const Vector& x) { return a.multiply(x); }

SparseMatrix SparseMatrix::submatrix(const std::vector<std::size_t>& index) const {
  std::vector<long> local(n_, -1);
  for (std::size_t k = 0; k < index.size(); ++k) local[index[k]] = static_cast<long>(k);
  std::vector<std::size_t> rp{0}, cols;
  std::vector<double> vals;
  for (std::size_t gi : index) {
    for (std::size_t k = row_ptr_[gi]; k < row_ptr_[gi + 1]; ++k) {
      if (local[cols_[k]] >= 0) {
        cols.push_back(static_cast<std::size_t>(local[cols_[k]]));
        vals.push_back(values_[k]);
      }
    }
    rp.push_back(cols.size());
  }
  return SparseMatrix(index.size(), std::move(rp), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::size_t> count(n_ + 1, 0);
  for (std::size_t c : cols_) ++count[c + 1];
  for (std::size_t i = 0; i < n_; ++i) count[i + 1] += count[i];
  std::vector<std::size_t> rp = count, cols(nnz());
  std::vector<double> vals(nnz());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      std::size_t dst = count[cols_[k]]++;
      cols[dst] = i;
      vals[dst] = values_[k];
    }
  }
  return SparseMatrix(n_, std::move(rp), std::move(cols), std::move(vals), block_size_);
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d[i * n_ + cols_[k]] = values_[k];
  }
  return d;
}

double SparseMatrix::asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      m = std::max(m, std::abs(values_[k] - at(cols_[k], i)));
    }
  }
  return m;
}

void SparseMatrix::mark_symmetric(double tol) {
  if (asymmetry() > tol * std::max(1.0, max_abs())) {
    throw std::invalid_argument("mark_symmetric: matrix is not symmetric");
  }
  symmetric_ = true;
}

void SparseMatrix::write_matrix_market(std::ostream& out) const {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << n_ << ' ' << n_ << ' ' << nnz() << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      out << i + 1 << ' ' << cols_[k] + 1 << ' ' << values_[k] << '\n';
    }
  }
}

TripletBuilder::TripletBuilder(std::size_t n, std::size_t reserve) : n_(n) { entries_.reserve(reserve); }

void TripletBuilder::add(std::size_t i, std::size_t j, double v) {
  if (i >= n_ || j >= n_) throw std::out_of_range("TripletBuilder: index out of range");
  entries_.push_back({i, j, v});
}

SparseMatrix TripletBuilder::build(std::size_t block_size) const {
  std::vector<Entry> sorted = entries_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Entry& a, const Entry& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  std::vector<std::size_t> rp(n_ + 1, 0), cols;
  std::vector<double> vals;
  cols.reserve(sorted.size());
  vals.reserve(sorted.size());
  std::size_t row = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const Entry& e = sorted[k];
    while (row < e.i) rp[++row] = cols.size();
    if (!cols.empty() && rp[row] < cols.size() && cols.back() == e.j) {
      vals.back() += e.v;
    } else {
      cols.push_back(e.j);
      vals.push_back(e.v);
    }
  }
  while (row < n_) rp[++row] = cols.size();
  return SparseMatrix(n_, std::move(rp), std::move(cols), std::move(vals), block_size);
}

}  // namespace nlc
