#include "nlc/linalg/smoothers.hpp"

#include <stdexcept>
#include <string>

namespace nlc {

Vector diagonal(const SparseMatrix& a) {
  Vector d(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    d[i] = a.at(i, i);
    if (d[i] == 0.0) throw std::invalid_argument("zero diagonal entry in row " + std::to_string(i));
  }
  return d;
}

namespace {
void sor_row(const SparseMatrix& a, const Vector& b, Vector& x, double omega, std::size_t i) {
  const auto& rp = a.row_ptr();
  const auto& cols = a.cols();
  const auto& vals = a.values();
  double diag = 0.0;
  double s = b[i];
  for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
    if (cols[k] == i) {
      diag = vals[k];
    } else {
      s -= vals[k] * x[cols[k]];
    }
  }
  if (diag == 0.0) throw std::invalid_argument("sor_sweep: zero diagonal entry in row " + std::to_string(i));
  x[i] = (1.0 - omega) * x[i] + omega * s / diag;
}
}  // namespace

void sor_sweep(const SparseMatrix& a, const Vector& b, Vector& x, double omega, int sweeps, bool symmetric) {
  if (a.rows() != x.size() || b.size() != x.size()) throw std::invalid_argument("sor_sweep: dimension mismatch");
  const std::size_t n = a.rows();
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t i = 0; i < n; ++i) sor_row(a, b, x, omega, i);
    if (symmetric) {
      for (std::size_t i = n; i-- > 0;) sor_row(a, b, x, omega, i);
    }
  }
}

void jacobi_sweep(const SparseMatrix& a, const Vector& b, Vector& x, double omega, int sweeps) {
  if (a.rows() != x.size() || b.size() != x.size()) throw std::invalid_argument("jacobi_sweep: dimension mismatch");
  const Vector d = diagonal(a);
  Vector ax(x.layout());
  for (int s = 0; s < sweeps; ++s) {
    a.multiply(x.data(), ax.data());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += omega * (b[i] - ax[i]) / d[i];
  }
}

}  // namespace nlc
