#include "nlc/core/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace nlc {

void SolveStats::absorb(const SolveStats& child) {
  inner_nonlinear_its += child.nonlinear_its + child.inner_nonlinear_its;
  linear_its += child.linear_its;
  func_evals += child.func_evals;
  jac_evals += child.jac_evals;
  pc_applies += child.pc_applies;
  npc_applies += child.npc_applies;
}

namespace {
struct ReasonName {
  ConvergedReason reason;
  const char* name;
};
constexpr ReasonName kReasonNames[] = {
    {ConvergedReason::iterating, "iterating"},
    {ConvergedReason::converged_rtol, "converged_rtol"},
    {ConvergedReason::converged_atol, "converged_atol"},
    {ConvergedReason::converged_stol, "converged_stol"},
    {ConvergedReason::converged_its, "converged_its"},
    {ConvergedReason::diverged_max_it, "diverged_max_it"},
    {ConvergedReason::diverged_nan, "diverged_nan"},
    {ConvergedReason::diverged_ratio, "diverged_ratio"},
    {ConvergedReason::diverged_linesearch, "diverged_linesearch"},
    {ConvergedReason::diverged_stagnation, "diverged_stagnation"},
    {ConvergedReason::diverged_inner, "diverged_inner"},
};
}  // namespace

const char* to_string(ConvergedReason reason) {
  for (const auto& entry : kReasonNames) {
    if (entry.reason == reason) return entry.name;
  }
  return "unknown";
}

ConvergedReason reason_from_string(const std::string& name) {
  for (const auto& entry : kReasonNames) {
    if (name == entry.name) return entry.reason;
  }
  throw std::invalid_argument("unknown converged reason '" + name + "'");
}

bool is_converged(ConvergedReason reason) {
  switch (reason) {
    case ConvergedReason::converged_rtol:
    case ConvergedReason::converged_atol:
    case ConvergedReason::converged_stol:
    case ConvergedReason::converged_its:
      return true;
    default:
      return false;
  }
}

bool is_diverged(ConvergedReason reason) {
  return reason != ConvergedReason::iterating && !is_converged(reason);
}

void ConvergenceParams::validate() const {
  if (!(rtol >= 0.0)) throw std::invalid_argument("rtol must be >= 0");
  if (!(atol >= 0.0)) throw std::invalid_argument("atol must be >= 0");
  if (max_it < 0) throw std::invalid_argument("max_it must be >= 0");
  if (!(divtol > 1.0)) throw std::invalid_argument("divtol must be > 1");
  if (!(stol >= 0.0)) throw std::invalid_argument("stol must be >= 0");
}

ConvergedReason check_convergence(long iteration, const ConvergenceParams& params, double rnorm,
                                  double rnorm0, double step_norm) {
  if (!std::isfinite(rnorm)) return ConvergedReason::diverged_nan;
  if (rnorm <= params.atol) return ConvergedReason::converged_atol;
  if (rnorm <= params.rtol * rnorm0) return ConvergedReason::converged_rtol;
  if (iteration > 0 && params.stol > 0.0 && step_norm >= 0.0 && step_norm < params.stol) {
    return ConvergedReason::converged_stol;
  }
  if (rnorm > params.divtol * rnorm0) return ConvergedReason::diverged_ratio;
  if (iteration >= params.max_it) return ConvergedReason::diverged_max_it;
  return ConvergedReason::iterating;
}

}  // namespace nlc
