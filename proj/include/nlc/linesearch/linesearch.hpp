#pragma once

#include <functional>
#include <string>

#include "nlc/core/stats.hpp"
#include "nlc/core/vector.hpp"

namespace nlc {

/// Residual map evaluated by line searches and solvers. Implementations count their own work in
/// the SolveStats passed in and may throw NonFiniteResidual.
using ResidualFn = std::function<Vector(const Vector& x, SolveStats& stats)>;

enum class LineSearchKind { bt, cp, l2, basic, none };

const char* to_string(LineSearchKind kind);
LineSearchKind line_search_from_string(const std::string& name);

struct LineSearchConfig {
  LineSearchKind kind = LineSearchKind::bt;
  double lambda0 = 1.0;
  int its = 1;             // secant iterations for cp and l2
  double alpha = 1e-4;     // sufficient-decrease constant for bt
  double lambda_min = 1e-12;
  int order = 1;           // 2 selects the three-point secant variant of cp
  bool carry_lambda = false;
  int max_backtracks = 40;

  void validate() const;
};

struct LineSearchOutcome {
  double lambda = 0.0;
  bool succeeded = true;
  long func_evals_used = 0;
  Vector x;          // x + lambda * y
  Vector r;          // residual at x (valid when has_residual)
  bool has_residual = false;
};

/// Cubic backtracking on ||r||^2 with slope s = r^T J y. `r` is the residual at x.
LineSearchOutcome bt_search(const ResidualFn& residual, const Vector& x, const Vector& r, const Vector& y,
                            double slope, const LineSearchConfig& cfg, SolveStats& stats);

/// Secant iteration on g(lambda) = y^T r(x + lambda y) starting from lambda_{-1} = 0.
LineSearchOutcome cp_search(const ResidualFn& residual, const Vector& x, const Vector& r, const Vector& y,
                            const LineSearchConfig& cfg, SolveStats& stats);

/// Secant minimization of ||r(x + lambda y)||^2 with three-point derivative estimates.
LineSearchOutcome l2_search(const ResidualFn& residual, const Vector& x, const Vector& r, const Vector& y,
                            const LineSearchConfig& cfg, SolveStats& stats);

/// lambda = lambda0 unconditionally (fixed damping). Evaluates the residual at the new point.
LineSearchOutcome basic_step(const ResidualFn& residual, const Vector& x, const Vector& y,
                             const LineSearchConfig& cfg, SolveStats& stats);

/// Dispatches on cfg.kind. `slope` is only used by bt; kind none behaves as basic with lambda 1.
LineSearchOutcome line_search(const ResidualFn& residual, const Vector& x, const Vector& r, const Vector& y,
                              double slope, const LineSearchConfig& cfg, SolveStats& stats);

}  // namespace nlc
