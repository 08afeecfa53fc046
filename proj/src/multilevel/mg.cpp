#include "nlc/multilevel/mg.hpp"

#include <stdexcept>

#include "nlc/linalg/smoothers.hpp"
#include "nlc/multilevel/transfer.hpp"

namespace nlc {

MgSmoother mg_smoother_from_string(const std::string& name) {
  if (name == "sor") return MgSmoother::sor;
  if (name == "gs") return MgSmoother::gs;
  throw ConfigError("mg: unknown smoother '" + name + "' (expected sor or gs)");
}

LinearMG::LinearMG(const GridHierarchy& hierarchy, const Vector& fine_state, MgSmoother smoother, double omega,
                   SolveStats& stats)
    : smoother_(smoother), omega_(omega) {
  Vector state = fine_state;
  for (std::size_t l = 0; l < hierarchy.size(); ++l) {
    if (l > 0) state = inject(state, hierarchy.layout(l));
    ops_.push_back(evaluate_jacobian(*hierarchy.problem(l), state, stats));
    layouts_.push_back(hierarchy.layout(l));
  }
  setup();
}

LinearMG::LinearMG(std::vector<SparseMatrix> operators, std::vector<Layout> layouts, MgSmoother smoother,
                   double omega)
    : ops_(std::move(operators)), layouts_(std::move(layouts)), smoother_(smoother), omega_(omega) {
  if (ops_.empty() || ops_.size() != layouts_.size()) throw std::invalid_argument("mg: operator/layout mismatch");
  setup();
}

void LinearMG::setup() {
  if (ops_.size() > 1) coarse_lu_.emplace(ops_.back());
}

void LinearMG::smooth(std::size_t level, const Vector& b, Vector& x) const {
  sor_sweep(ops_[level], b, x, smoother_ == MgSmoother::sor ? omega_ : 1.0, 1, smoother_ == MgSmoother::sor);
}

void LinearMG::cycle(std::size_t level, const Vector& b, Vector& x) const {
  if (level + 1 == ops_.size()) {
    if (level == 0) {
      smooth(level, b, x);
      smooth(level, b, x);
    } else {
      x = coarse_lu_->solve(b);
    }
    return;
  }
  smooth(level, b, x);
  Vector r = b;
  Vector ax = ops_[level].multiply(x);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= ax[k];
  const Vector bc = restrict_residual(r, layouts_[level + 1]);
  Vector ec(layouts_[level + 1]);
  cycle(level + 1, bc, ec);
  axpy(1.0, prolong(ec, layouts_[level]), x);
  smooth(level, b, x);
}

void LinearMG::vcycle(const Vector& b, Vector& x) const { cycle(0, b, x); }

void LinearMG::apply(const Vector& in, Vector& out) const {
  out = Vector(layouts_[0]);
  Vector b(std::vector<double>(in.values()), layouts_[0]);
  cycle(0, b, out);
}

}  // namespace nlc
