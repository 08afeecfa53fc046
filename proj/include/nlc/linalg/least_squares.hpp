#pragma once

#include <cstddef>
#include <vector>

#include "nlc/core/vector.hpp"

namespace nlc {

struct LeastSquaresResult {
  std::vector<double> weights;
  std::size_t rank = 0;
};

/// Minimum-norm solution of min_w || sum_k w_k columns[k] - target ||_2. The tall system is
/// reduced by Householder QR; the small triangular factor is decomposed by one-sided Jacobi SVD
/// and singular values below sigma_rtol * sigma_max are truncated.
LeastSquaresResult least_squares_minnorm(const std::vector<Vector>& columns, const Vector& target,
                                         double sigma_rtol = 1e-10);

}  // namespace nlc
