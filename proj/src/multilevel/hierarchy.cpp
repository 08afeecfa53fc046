#include "nlc/multilevel/hierarchy.hpp"

#include <stdexcept>
#include <string>

#include "nlc/multilevel/transfer.hpp"

namespace nlc {

namespace {
std::string admissible_sizes(int levels) {
  const std::size_t factor = std::size_t{1} << (levels - 1);
  std::string out;
  for (std::size_t c = 3; c <= 8; ++c) {
    if (!out.empty()) out += ", ";
    out += std::to_string((c - 1) * factor + 1);
  }
  return out + ", ...";
}
}  // namespace

GridHierarchy GridHierarchy::build(ProblemPtr fine, std::optional<int> levels) {
  if (levels && *levels < 1) throw ConfigError("hierarchy: levels must be >= 1");
  GridHierarchy h;
  h.problems_.push_back(std::move(fine));
  while (!levels || static_cast<int>(h.problems_.size()) < *levels) {
    const ProblemPtr& last = h.problems_.back();
    if (!last->coarsenable()) {
      if (!levels) break;
      const Layout l = h.problems_.front()->layout();
      throw ConfigError("hierarchy: a " + std::to_string(l.nx) + "x" + std::to_string(l.ny) + " grid does not admit " +
                        std::to_string(*levels) + " levels; admissible sizes are " + admissible_sizes(*levels));
    }
    auto coarse = last->coarsen();
    if (!coarse) throw ConfigError("hierarchy: problem '" + last->name() + "' cannot be rediscretized");
    h.problems_.push_back(std::move(coarse));
  }
  return h;
}

Vector GridHierarchy::transfer(Transfer kind, const Vector& field, std::size_t from, std::size_t to) const {
  if (from >= size() || to >= size()) throw std::invalid_argument("transfer: level out of range");
  switch (kind) {
    case Transfer::restrict:
      if (to != from + 1) throw std::invalid_argument("transfer: restriction needs adjacent levels");
      return restrict_full_weighting(field, layout(to));
    case Transfer::inject:
      if (to != from + 1) throw std::invalid_argument("transfer: injection needs adjacent levels");
      return nlc::inject(field, layout(to));
    case Transfer::prolong:
      if (from != to + 1) throw std::invalid_argument("transfer: prolongation needs adjacent levels");
      return nlc::prolong(field, layout(to));
  }
  throw std::invalid_argument("transfer: unknown kind");
}

}  // namespace nlc
