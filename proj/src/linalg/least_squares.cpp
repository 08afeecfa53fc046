#include "nlc/linalg/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlc {

namespace {

/// One-sided Jacobi on the columns of the m x m row-major matrix `a`. On return the columns of
/// `a` are mutually orthogonal (a = U * Sigma) and `v` holds the accumulated rotations.
void jacobi_svd(std::size_t m, std::vector<double>& a, std::vector<double>& v) {
  v.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a[i * m + p] * a[i * m + p];
          beta += a[i * m + q] * a[i * m + q];
          gamma += a[i * m + p] * a[i * m + q];
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a[i * m + p], aq = a[i * m + q];
          a[i * m + p] = c * ap - s * aq;
          a[i * m + q] = s * ap + c * aq;
          const double vp = v[i * m + p], vq = v[i * m + q];
          v[i * m + p] = c * vp - s * vq;
          v[i * m + q] = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
}

}  // namespace

LeastSquaresResult least_squares_minnorm(const std::vector<Vector>& columns, const Vector& target,
                                         double sigma_rtol) {
  LeastSquaresResult result;
  const std::size_t m = columns.size();
  if (m == 0) return result;
  if (!(sigma_rtol > 0.0 && sigma_rtol < 1.0)) throw std::invalid_argument("sigma_rtol must lie in (0,1)");
  const std::size_t n = target.size();
  for (const auto& c : columns) {
    if (c.size() != n) throw std::invalid_argument("least_squares_minnorm: column length mismatch");
  }
  result.weights.assign(m, 0.0);

  // Householder QR of the n x m column set, applied to the target as well.
  std::vector<std::vector<double>> a(m);
  for (std::size_t k = 0; k < m; ++k) a[k] = columns[k].values();
  std::vector<double> rhs = target.values();
  const std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += a[k][i] * a[k][i];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = a[k][k] > 0.0 ? -norm : norm;
    std::vector<double> h(a[k].begin() + static_cast<std::ptrdiff_t>(k), a[k].end());
    h[0] -= alpha;
    double hh = 0.0;
    for (double x : h) hh += x * x;
    if (hh == 0.0) continue;
    auto reflect = [&](std::vector<double>& col) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += h[i - k] * col[i];
      s = 2.0 * s / hh;
      for (std::size_t i = k; i < n; ++i) col[i] -= s * h[i - k];
    };
    for (std::size_t j = k; j < m; ++j) reflect(a[j]);
    reflect(rhs);
  }

  // Upper-triangular R (steps x m, padded to m x m) and the reduced right-hand side.
  std::vector<double> r(m * m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i <= std::min(j, steps - 1); ++i) r[i * m + j] = a[j][i];
  }
  std::vector<double> qtb(m, 0.0);
  for (std::size_t i = 0; i < steps; ++i) qtb[i] = rhs[i];

  std::vector<double> v;
  jacobi_svd(m, r, v);
  std::vector<double> sigma(m, 0.0);
  double sigma_max = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += r[i * m + j] * r[i * m + j];
    sigma[j] = std::sqrt(s);
    sigma_max = std::max(sigma_max, sigma[j]);
  }
  if (sigma_max == 0.0) return result;
  // w = V Sigma^+ U^T qtb with U column j = r(:, j) / sigma_j.
  for (std::size_t j = 0; j < m; ++j) {
    if (sigma[j] < sigma_rtol * sigma_max) continue;
    ++result.rank;
    double u_dot = 0.0;
    for (std::size_t i = 0; i < m; ++i) u_dot += r[i * m + j] * qtb[i];
    const double coef = u_dot / (sigma[j] * sigma[j]);
    for (std::size_t i = 0; i < m; ++i) result.weights[i] += v[i * m + j] * coef;
  }
  return result;
}

}  // namespace nlc
