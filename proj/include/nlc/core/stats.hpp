#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nlc {

/// Work counters for a solve. Nested solvers run against their own SolveStats and are folded
/// into the parent with absorb(), so a composed solver's totals equal its own work plus the
/// sum over its children.
struct SolveStats {
  long nonlinear_its = 0;
  long inner_nonlinear_its = 0;
  long linear_its = 0;
  long func_evals = 0;
  long jac_evals = 0;
  long pc_applies = 0;
  long npc_applies = 0;
  double wall_time = 0.0;
  std::vector<std::pair<int, double>> history;

  /// Adds the child's work counters. The child's outer iterations are accounted as inner iterations.
  void absorb(const SolveStats& child);
};

enum class ConvergedReason {
  iterating,
  converged_rtol,
  converged_atol,
  converged_stol,
  converged_its,  // fixed iteration budget exhausted (inner solvers)
  diverged_max_it,
  diverged_nan,
  diverged_ratio,
  diverged_linesearch,
  diverged_stagnation,
  diverged_inner,
};

const char* to_string(ConvergedReason reason);
ConvergedReason reason_from_string(const std::string& name);
bool is_converged(ConvergedReason reason);
bool is_diverged(ConvergedReason reason);

struct ConvergenceParams {
  double rtol = 1e-8;
  double atol = 1e-50;
  int max_it = 50;
  double divtol = 1e4;
  double stol = 0.0;  // relative step tolerance; 0 disables

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Classifies the state of an iteration. `step_norm` is the relative step ||dx||/||x|| of the
/// last update, or a negative value when no step has been taken yet.
ConvergedReason check_convergence(long iteration, const ConvergenceParams& params, double rnorm,
                                  double rnorm0, double step_norm = -1.0);

}  // namespace nlc
