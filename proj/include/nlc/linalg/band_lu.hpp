#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlc/core/vector.hpp"
#include "nlc/linalg/sparse_matrix.hpp"

namespace nlc {

class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix(std::size_t row, const std::string& what) : std::runtime_error(what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// LU factorization with partial (row) pivoting in natural ordering. Structured-grid
/// matrices are banded, so the factors are stored in a band of width 2*kl + ku + 1 that
/// holds the fill produced by row interchanges.
class LUFactors {
 public:
  /// Throws SingularMatrix when a pivot falls below 1e-14 * max|A|.
  explicit LUFactors(const SparseMatrix& a);

  std::size_t order() const { return n_; }
  Vector solve(const Vector& y) const;
  void solve_in_place(double* y) const;

 private:
  double& at(std::size_t i, std::size_t j) { return band_[i * width_ + (j + kl_ - i)]; }
  const double& at(std::size_t i, std::size_t j) const { return band_[i * width_ + (j + kl_ - i)]; }

  std::size_t n_ = 0;
  std::size_t kl_ = 0;
  std::size_t ku_ = 0;  // upper bandwidth of U, including pivoting fill
  std::size_t width_ = 0;
  std::vector<double> band_;
  std::vector<std::size_t> pivots_;
};

inline LUFactors sparse_lu(const SparseMatrix& a) { return LUFactors(a); }
inline Vector lu_solve(const LUFactors& f, const Vector& y) { return f.solve(y); }

}  // namespace nlc
