#pragma once

#include <optional>
#include <vector>

#include "nlc/core/problem.hpp"

namespace nlc {

/// Fine-to-coarse list of rediscretized problems. Level 0 is the finest.
class GridHierarchy {
 public:
  /// Builds `levels` grids, or as many as the grid admits when unset. Throws ConfigError when
  /// the requested depth is not reachable, listing the admissible fine sizes.
  static GridHierarchy build(ProblemPtr fine, std::optional<int> levels = std::nullopt);

  std::size_t size() const { return problems_.size(); }
  const ProblemPtr& problem(std::size_t level) const { return problems_[level]; }
  Layout layout(std::size_t level) const { return problems_[level]->layout(); }

  enum class Transfer { restrict, prolong, inject };
  /// Applies a transfer between adjacent levels (restrict and inject go from `from` to from+1,
  /// prolong from `from` to from-1). Throws std::invalid_argument for non-adjacent levels.
  Vector transfer(Transfer kind, const Vector& field, std::size_t from, std::size_t to) const;

 private:
  std::vector<ProblemPtr> problems_;
};

}  // namespace nlc
