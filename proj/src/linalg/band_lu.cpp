#include "nlc/linalg/band_lu.hpp"

#include <algorithm>
#include <cmath>

namespace nlc {

LUFactors::LUFactors(const SparseMatrix& a) : n_(a.rows()) {
  kl_ = a.lower_bandwidth();
  ku_ = a.upper_bandwidth() + kl_;
  width_ = 2 * kl_ + a.upper_bandwidth() + 1;
  band_.assign(n_ * width_, 0.0);
  pivots_.resize(n_);
  const auto& rp = a.row_ptr();
  const auto& cols = a.cols();
  const auto& vals = a.values();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) at(i, cols[k]) = vals[k];
  }
  const double threshold = 1e-14 * a.max_abs();

  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    const std::size_t last_col = std::min(n_ - 1, k + ku_);
    std::size_t p = k;
    double best = std::abs(at(k, k));
    for (std::size_t r = k + 1; r <= last_row; ++r) {
      if (std::abs(at(r, k)) > best) {
        best = std::abs(at(r, k));
        p = r;
      }
    }
    if (!(best > threshold)) {
      throw SingularMatrix(k, "singular matrix: pivot " + std::to_string(best) + " in row " + std::to_string(k));
    }
    pivots_[k] = p;
    if (p != k) {
      for (std::size_t j = k; j <= last_col; ++j) std::swap(at(k, j), at(p, j));
    }
    const double inv = 1.0 / at(k, k);
    const double* pivot_row = &at(k, k);
    for (std::size_t r = k + 1; r <= last_row; ++r) {
      double& lrk = at(r, k);
      if (lrk == 0.0) continue;
      lrk *= inv;
      const double l = lrk;
      double* row = &at(r, k);
      for (std::size_t j = 1; j <= last_col - k; ++j) row[j] -= l * pivot_row[j];
    }
  }
}

void LUFactors::solve_in_place(double* y) const {
  for (std::size_t k = 0; k < n_; ++k) {
    if (pivots_[k] != k) std::swap(y[k], y[pivots_[k]]);
    const double yk = y[k];
    if (yk == 0.0) continue;
    const std::size_t last_row = std::min(n_ - 1, k + kl_);
    for (std::size_t r = k + 1; r <= last_row; ++r) y[r] -= at(r, k) * yk;
  }
  for (std::size_t i = n_; i-- > 0;) {
    const std::size_t last_col = std::min(n_ - 1, i + ku_);
    const double* row = &at(i, i);
    double s = y[i];
    for (std::size_t j = 1; j <= last_col - i; ++j) s -= row[j] * y[i + j];
    y[i] = s / row[0];
  }
}

Vector LUFactors::solve(const Vector& y) const {
  if (y.size() != n_) throw std::invalid_argument("lu_solve: dimension mismatch");
  Vector x = y;
  solve_in_place(x.data());
  return x;
}

}  // namespace nlc
