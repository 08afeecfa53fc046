#include "nlc/solvers/linear_pc.hpp"

#include "nlc/decomposition/subdomains.hpp"
#include "nlc/linalg/band_lu.hpp"
#include "nlc/linalg/smoothers.hpp"
#include "nlc/multilevel/hierarchy.hpp"
#include "nlc/multilevel/mg.hpp"

namespace nlc {

LinearPc make_linear_pc(const LinearPcSpec& spec, const ProblemPtr& problem, const SparseMatrix& jacobian,
                        const Vector& x, SolveStats& stats) {
  LinearPc pc;
  const double omega = spec.omega.value_or(1.0);
  switch (spec.kind) {
    case LinearPcKind::none:
      break;
    case LinearPcKind::lu: {
      auto lu = std::make_shared<const LUFactors>(jacobian);
      pc.apply = [lu](const Vector& in, Vector& out) { out = lu->solve(in); };
      pc.holder = lu;
      break;
    }
    case LinearPcKind::sor: {
      const SparseMatrix* a = &jacobian;
      pc.apply = [a, omega](const Vector& in, Vector& out) {
        out = Vector(in.layout());
        sor_sweep(*a, in, out, omega, 1, true);
      };
      break;
    }
    case LinearPcKind::jacobi: {
      auto inv = std::make_shared<Vector>(diagonal(jacobian));
      for (auto& d : *inv) d = omega / d;
      pc.apply = [inv](const Vector& in, Vector& out) {
        out = in;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] *= (*inv)[k];
      };
      pc.holder = inv;
      break;
    }
    case LinearPcKind::mg: {
      const GridHierarchy hierarchy = GridHierarchy::build(problem, spec.levels);
      auto mg = std::make_shared<const LinearMG>(hierarchy, x, mg_smoother_from_string(spec.smoother.value_or("sor")),
                                                 omega, stats);
      pc.apply = [mg](const Vector& in, Vector& out) { mg->apply(in, out); };
      pc.holder = mg;
      break;
    }
    case LinearPcKind::asm_: {
      const Layout layout = problem->layout();
      auto as = std::make_shared<const LinearAsm>(
          jacobian, layout, static_cast<std::size_t>(spec.px.value_or(2)),
          static_cast<std::size_t>(layout.ny == 1 ? 1 : spec.py.value_or(2)),
          static_cast<std::size_t>(spec.overlap.value_or(6)));
      pc.apply = [as](const Vector& in, Vector& out) { as->apply(in, out); };
      pc.holder = as;
      break;
    }
  }
  return pc;
}

}  // namespace nlc
