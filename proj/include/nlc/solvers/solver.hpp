#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "nlc/core/problem.hpp"
#include "nlc/core/stats.hpp"
#include "nlc/linesearch/linesearch.hpp"
#include "nlc/solvers/solver_node.hpp"

namespace nlc {

class NonlinearSolver;

struct SolveOutcome {
  ConvergedReason reason = ConvergedReason::iterating;
  long iterations = 0;
  double initial_norm = 0.0;
  double final_norm = 0.0;             // NaN when the final residual was not evaluated
  std::optional<Vector> final_residual;  // r(x) at the returned x, when available
};

/// Residual driving a solver's iteration: either r(x) itself or the left-preconditioned
/// residual x - N(r, x). Convergence is always judged on the norm of the original residual.
class IterationResidual {
 public:
  /// Plain residual of `problem`.
  explicit IterationResidual(ProblemPtr problem);
  /// Left-preconditioned residual with inner solver `inner`.
  IterationResidual(ProblemPtr problem, const SolverNode& inner);

  bool preconditioned() const { return static_cast<bool>(inner_); }

  /// Evaluates the iteration residual at x. `r0` optionally supplies r(x).
  Vector evaluate(const Vector& x, SolveStats& stats, const Vector* r0 = nullptr);
  /// ||r(x)|| of the original residual at the point of the most recent evaluate() call when
  /// it equals x; otherwise evaluates r(x).
  double original_norm(const Vector& x, SolveStats& stats);
  /// Original residual r(x) when it is known without extra work (plain case or cached).
  const Vector* original_residual(const Vector& x) const;

  ResidualFn as_function();
  NonlinearSolver* inner_solver() { return inner_.get(); }

 private:
  ProblemPtr problem_;
  std::unique_ptr<NonlinearSolver> inner_;
  Vector last_x_;
  double last_norm_ = 0.0;
  std::optional<Vector> last_r_;
  bool has_last_ = false;
};

/// Iterate state shared between the driver loop and a solver's step().
struct IterateState {
  Vector x;
  Vector r;             // iteration residual at x (valid when r_valid)
  bool r_valid = false;
  double fnorm = 0.0;   // ||r(x)|| of the original residual
  double step_norm = -1.0;
  ConvergedReason reason = ConvergedReason::iterating;
};

using Monitor = std::function<void(long iteration, double rnorm)>;

/// Base class of every nonlinear solver. A solver is bound to one problem. Outer solvers iterate
/// until a convergence test fires; inner solvers (preconditioners, smoothers, subdomain solvers,
/// composite children) run a fixed iteration budget and test tolerances only when set explicitly.
class NonlinearSolver {
 public:
  virtual ~NonlinearSolver() = default;

  /// Solves from x in place. `r0`, when given, must equal r(x) and saves one evaluation.
  SolveOutcome solve(Vector& x, SolveStats& stats, const Vector* r0 = nullptr);

  void set_monitor(Monitor monitor) { monitor_ = std::move(monitor); }
  void set_record_history(bool record) { record_history_ = record; }
  const SolverNode& node() const { return node_; }
  const ProblemPtr& problem() const { return problem_; }
  bool inner() const { return inner_; }

 protected:
  NonlinearSolver(const SolverNode& node, ProblemPtr problem, bool inner);

  /// Clears per-solve state (histories).
  virtual void reset() {}
  /// Performs one iteration. Must update state.x; should leave state.r/fnorm valid when it has
  /// them for free, otherwise set r_valid = false. Sets state.reason on failure.
  virtual void step(IterateState& state, SolveStats& stats) = 0;
  /// Whether step() needs state.r on entry.
  virtual bool needs_residual() const { return true; }

  /// Ensures state.r and state.fnorm describe state.x.
  void refresh(IterateState& state, SolveStats& stats);
  /// Moves the iterate to x_new with iteration residual r_new (already evaluated through
  /// residual_ or, for plain residuals, equal to r(x_new)).
  void accept(IterateState& state, Vector x_new, Vector r_new, SolveStats& stats);
  /// Moves the iterate to x_new without a residual.
  void accept(IterateState& state, Vector x_new);
  LineSearchConfig line_search_config(LineSearchKind default_kind) const;
  /// Residual used by line searches: the iteration residual, or r itself when configured.
  ResidualFn search_residual();

  SolverNode node_;
  ProblemPtr problem_;
  bool inner_;
  ConvergenceParams conv_;
  bool test_tolerances_;
  IterationResidual residual_;
  Monitor monitor_;
  bool record_history_ = false;
};

/// Builds a solver for `problem` from a configuration tree. Throws ConfigError.
std::unique_ptr<NonlinearSolver> make_solver(const SolverNode& node, ProblemPtr problem, bool inner = false);

/// Runs `node` as an inner solver from x (in place) with a child SolveStats that is folded into
/// `stats`. Returns the outcome; the final residual is included when known.
SolveOutcome run_inner(const SolverNode& node, ProblemPtr problem, Vector& x, SolveStats& stats,
                       const Vector* r0 = nullptr);

}  // namespace nlc
