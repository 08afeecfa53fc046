#include "nlc/problems/linear.hpp"

#include <algorithm>

namespace nlc {

namespace {
PointBlockOps matrix_blocks(const SparseMatrix& a, std::size_t bs) {
  PointBlockOps ops;
  ops.block_size = bs;
  ops.residual = [&a, bs](const Vector& x, std::size_t node, double* out) {
    const auto& rp = a.row_ptr();
    const auto& cols = a.cols();
    const auto& vals = a.values();
    for (std::size_t f = 0; f < bs; ++f) {
      const std::size_t row = node * bs + f;
      double s = 0.0;
      for (std::size_t k = rp[row]; k < rp[row + 1]; ++k) s += vals[k] * x[cols[k]];
      out[f] = s;
    }
  };
  ops.jacobian = [&a, bs](const Vector&, std::size_t node, double* out) {
    for (std::size_t r = 0; r < bs; ++r) {
      for (std::size_t c = 0; c < bs; ++c) out[r * bs + c] = a.at(node * bs + r, node * bs + c);
    }
  };
  return ops;
}
}  // namespace

LinearProblem::LinearProblem(SparseMatrix a, Vector b, std::string name)
    : a_(std::move(a)), b_(std::move(b)), name_(std::move(name)) {
  if (a_.rows() != b_.size()) throw std::invalid_argument("LinearProblem: matrix and rhs sizes differ");
  symmetric_ = a_.asymmetry() <= 1e-14 * std::max(1.0, a_.max_abs());
  blocks_ = matrix_blocks(a_, b_.layout().dof);
}

void LinearProblem::apply(const Vector& x, Vector& f) const {
  if (f.layout() != b_.layout()) f = Vector(b_.layout());
  a_.multiply(x.data(), f.data());
}

SparseMatrix LinearProblem::jacobian(const Vector&) const { return a_; }

SparseMatrix poisson1d_matrix(std::size_t n) {
  TripletBuilder tb(n, 3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) tb.add(i, i - 1, -1.0);
    tb.add(i, i, 2.0);
    if (i + 1 < n) tb.add(i, i + 1, -1.0);
  }
  return tb.build();
}

Poisson1DProblem::Poisson1DProblem(std::size_t n, double source) : n_(n), source_(source), b_(n) {
  if (n < 3) throw ConfigError("Poisson1DProblem needs at least 3 nodes");
  const double h = 1.0 / static_cast<double>(n - 1);
  TripletBuilder tb(n, 3 * n);
  tb.add(0, 0, 1.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    tb.add(i, i - 1, -1.0 / h);
    tb.add(i, i, 2.0 / h);
    tb.add(i, i + 1, -1.0 / h);
    b_[i] = h * source;
  }
  tb.add(n - 1, n - 1, 1.0);
  a_ = tb.build();
  blocks_ = matrix_blocks(a_, 1);
}

void Poisson1DProblem::apply(const Vector& x, Vector& f) const {
  if (f.size() != n_) f = Vector(n_);
  a_.multiply(x.data(), f.data());
}

SparseMatrix Poisson1DProblem::jacobian(const Vector&) const { return a_; }

std::shared_ptr<NonlinearProblem> Poisson1DProblem::coarsen() const {
  if (!coarsenable()) return nullptr;
  return std::make_shared<Poisson1DProblem>((n_ + 1) / 2, source_);
}

}  // namespace nlc
