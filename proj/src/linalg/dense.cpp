#include "nlc/linalg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace nlc {

bool dense_solve_in_place(std::size_t n, double* a, double* b, double rel_tol) {
  double scale = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) scale = std::max(scale, std::abs(a[i]));
  const double threshold = rel_tol * scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a[r * n + k]) > std::abs(a[p * n + k])) p = r;
    }
    if (!(std::abs(a[p * n + k]) > threshold)) return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      std::swap(b[k], b[p]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double l = a[r * n + k] / a[k * n + k];
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[r * n + j] -= l * a[k * n + j];
      b[r] -= l * b[k];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * b[j];
    b[i] = s / a[i * n + i];
  }
  return true;
}

}  // namespace nlc
