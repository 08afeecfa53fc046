#include "nlc/composition/composite.hpp"
#include "nlc/decomposition/gsn.hpp"
#include "nlc/decomposition/nasm.hpp"
#include "nlc/multilevel/fas.hpp"
#include "nlc/solvers/anderson.hpp"
#include "nlc/solvers/ncg.hpp"
#include "nlc/solvers/newton.hpp"
#include "nlc/solvers/nrich.hpp"
#include "nlc/solvers/qn.hpp"
#include "nlc/solvers/solver.hpp"

namespace nlc {

std::unique_ptr<NonlinearSolver> make_solver(const SolverNode& node, ProblemPtr problem, bool inner) {
  if (!problem) throw ConfigError("make_solver: no problem");
  switch (node.kind) {
    case SolverKind::newton: return std::make_unique<NewtonSolver>(node, problem, inner);
    case SolverKind::nrich: return std::make_unique<NrichSolver>(node, problem, inner);
    case SolverKind::anderson: return std::make_unique<AndersonSolver>(node, problem, inner, false);
    case SolverKind::ngmres: return std::make_unique<AndersonSolver>(node, problem, inner, true);
    case SolverKind::qn: return std::make_unique<QNSolver>(node, problem, inner);
    case SolverKind::ncg: return std::make_unique<NcgSolver>(node, problem, inner);
    case SolverKind::fas: return std::make_unique<FasSolver>(node, problem, inner);
    case SolverKind::nasm: return std::make_unique<NasmSolver>(node, problem, inner, SchwarzVariant::nasm);
    case SolverKind::ras: return std::make_unique<NasmSolver>(node, problem, inner, SchwarzVariant::ras);
    case SolverKind::gsn: return std::make_unique<GsnSolver>(node, problem, inner);
    case SolverKind::composite: return std::make_unique<CompositeSolver>(node, problem, inner);
  }
  throw ConfigError("make_solver: unknown solver kind");
}

}  // namespace nlc
