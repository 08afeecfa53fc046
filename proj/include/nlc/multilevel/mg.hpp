#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlc/core/stats.hpp"
#include "nlc/linalg/band_lu.hpp"
#include "nlc/linalg/sparse_matrix.hpp"
#include "nlc/multilevel/hierarchy.hpp"

namespace nlc {

enum class MgSmoother { sor, gs };

MgSmoother mg_smoother_from_string(const std::string& name);

/// Linear geometric multigrid V(1,1) cycle with rediscretized level operators and an LU solve on
/// the coarsest level. Smoothing is symmetric SOR (sor) or one forward Gauss-Seidel sweep (gs).
/// With a single level the cycle is two smoothing applications.
class LinearMG {
 public:
  /// Level operators are the Jacobians of each level's problem at the injected fine state.
  LinearMG(const GridHierarchy& hierarchy, const Vector& fine_state, MgSmoother smoother, double omega,
           SolveStats& stats);
  /// Explicit level operators, finest first.
  LinearMG(std::vector<SparseMatrix> operators, std::vector<Layout> layouts, MgSmoother smoother, double omega);

  std::size_t levels() const { return ops_.size(); }
  const SparseMatrix& op(std::size_t level) const { return ops_[level]; }

  /// One V-cycle for A x = b on the finest level, in place.
  void vcycle(const Vector& b, Vector& x) const;
  /// Preconditioner application: out = V-cycle from a zero guess.
  void apply(const Vector& in, Vector& out) const;

 private:
  void setup();
  void cycle(std::size_t level, const Vector& b, Vector& x) const;
  void smooth(std::size_t level, const Vector& b, Vector& x) const;

  std::vector<SparseMatrix> ops_;
  std::vector<Layout> layouts_;
  MgSmoother smoother_;
  double omega_;
  std::optional<LUFactors> coarse_lu_;
};

}  // namespace nlc
