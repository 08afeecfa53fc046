#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlc/linesearch/linesearch.hpp"

namespace nlc {

enum class SolverKind { newton, nrich, anderson, ngmres, qn, ncg, fas, nasm, ras, gsn, composite };

const char* to_string(SolverKind kind);
std::optional<SolverKind> solver_kind_from_string(const std::string& name);

enum class LinearPcKind { lu, sor, jacobi, none, mg, asm_ };

const char* to_string(LinearPcKind kind);
std::optional<LinearPcKind> linear_pc_from_string(const std::string& name);

/// Linear preconditioner for Newton's inner Krylov solve. Unset optionals take defaults.
struct LinearPcSpec {
  LinearPcKind kind = LinearPcKind::lu;
  std::optional<int> levels;         // mg: number of grids, default as many as the grid allows
  std::optional<std::string> smoother;  // mg: "sor" (symmetric SOR) or "gs" (forward Gauss-Seidel)
  std::optional<int> overlap;        // asm
  std::optional<int> px, py;         // asm box partition
  std::optional<double> omega;       // sor / jacobi relaxation

  friend bool operator==(const LinearPcSpec&, const LinearPcSpec&) = default;
};

/// Configuration tree of a (possibly composed) nonlinear solver. Only explicitly set options are
/// stored; defaults are resolved when the solver is built for a problem.
struct SolverNode {
  SolverKind kind = SolverKind::newton;

  std::optional<double> rtol, atol, stol, divtol;
  std::optional<int> max_it;

  std::optional<LineSearchKind> ls;
  std::optional<double> damping;
  std::optional<int> ls_its, ls_order;
  std::optional<bool> ls_unpreconditioned;  // line search on r instead of the left-preconditioned residual

  std::optional<LinearPcSpec> lpc;
  std::optional<double> ksp_rtol;
  std::optional<int> ksp_max_it;

  std::optional<int> m;              // anderson/ngmres/qn history depth
  std::optional<int> levels;         // fas
  std::optional<int> sweeps, max_block_it;  // gsn
  std::optional<int> overlap, px, py;       // nasm/ras
  std::optional<std::string> type;   // composite: additive | multiplicative
  std::vector<double> weights;       // composite fixed weights
  std::optional<bool> allow_unsym;   // qn/ncg on problems without a symmetric Jacobian

  std::shared_ptr<SolverNode> lp, rp;
  std::shared_ptr<SolverNode> sub, smoother, coarse;
  std::vector<SolverNode> children;

  /// Kind-specific structural checks; throws ConfigError.
  void validate() const;

  friend bool operator==(const SolverNode& a, const SolverNode& b);
};

/// Canonical DSL text of a configuration tree (keys in a fixed order).
std::string to_string(const SolverNode& node);

/// Convenience constructor.
SolverNode make_node(SolverKind kind);

}  // namespace nlc
