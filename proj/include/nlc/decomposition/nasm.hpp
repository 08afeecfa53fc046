#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "nlc/decomposition/subdomains.hpp"
#include "nlc/linalg/band_lu.hpp"
#include "nlc/solvers/solver.hpp"

namespace nlc {

enum class SchwarzVariant { nasm, ras };

/// Nonlinear additive Schwarz. Every subdomain problem is solved from the same global iterate
/// with its outside values frozen; the corrections are injected by overlap averaging (nasm) or
/// on owned unknowns only (ras). A divergent subdomain contributes no correction.
class NasmSolver : public NonlinearSolver {
 public:
  NasmSolver(const SolverNode& node, ProblemPtr problem, bool inner, SchwarzVariant variant);

  SchwarzVariant variant() const { return variant_; }
  const SubdomainDecomposition& decomposition() const { return *dd_; }

  /// When enabled, each application also factors the subdomain Jacobians at the local solutions
  /// (needed by the ASPIN operator).
  void set_cache_factors(bool cache) { cache_factors_ = cache; }
  /// Replaces the subdomain solver chosen at construction.
  void set_subdomain_solver(SolverNode sub) { sub_ = std::move(sub); }
  /// Global iterate of the most recent application, when factors were cached.
  const std::optional<Vector>& cached_point() const { return cached_x_; }
  /// Factors of J^B at the local solutions of the most recent application (empty entries for
  /// divergent or singular subdomains).
  const std::vector<std::optional<LUFactors>>& cached_factors() const { return factors_; }
  /// Global Jacobians at the iterates with each subdomain replaced by its local solution
  /// (empty entries where no factor is cached).
  const std::vector<std::optional<SparseMatrix>>& cached_jacobians() const { return jacobians_; }

  /// Injects a local vector of subdomain b into `global` according to the variant.
  void inject(std::size_t b, const Vector& local, Vector& global) const;

  /// One additive Schwarz application from x: returns the new global iterate.
  Vector apply_once(const Vector& x, SolveStats& stats);

 protected:
  void step(IterateState& state, SolveStats& stats) override;
  bool needs_residual() const override { return false; }

 private:
  SchwarzVariant variant_;
  std::unique_ptr<SubdomainDecomposition> dd_;
  SolverNode sub_;
  bool cache_factors_ = false;
  std::optional<Vector> cached_x_;
  std::vector<std::optional<LUFactors>> factors_;
  std::vector<std::optional<SparseMatrix>> jacobians_;
};

/// Default subdomain solver: one Newton iteration with a direct linear solve.
SolverNode default_subdomain_solver();

/// Subdomain solver used under ASPIN when none is given: Newton with a direct linear solve run to
/// a tight local tolerance, so that the preconditioned residual has the Jacobian the ASPIN
/// operator assumes.
SolverNode aspin_subdomain_solver();

}  // namespace nlc
