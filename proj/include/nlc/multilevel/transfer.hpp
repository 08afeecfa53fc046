#pragma once

#include <cstddef>

#include "nlc/core/vector.hpp"

namespace nlc {

/// Coarse node count of the 2n-1 refinement family: (n + 1) / 2, or n for the trivial
/// y extent of a 1D grid.
std::size_t coarse_extent(std::size_t n);
/// Coarse layout of `fine`; dof is kept.
Layout coarse_layout(const Layout& fine);
/// Whether `fine` can be coarsened once (odd extents with at least 3 coarse nodes).
bool can_coarsen(const Layout& fine);

/// Full-weighting restriction of a grid function (1D weights 1/4, 1/2, 1/4 per direction),
/// renormalized where the stencil leaves the grid. Constants are preserved.
Vector restrict_full_weighting(const Vector& fine, const Layout& coarse);
/// Restriction of an area-scaled residual: 2^dim times full weighting at interior coarse nodes
/// and injection at boundary coarse nodes (boundary rows are unscaled).
Vector restrict_residual(const Vector& fine, const Layout& coarse);
/// Bilinear (linear in 1D) interpolation.
Vector prolong(const Vector& coarse, const Layout& fine);
/// Pointwise sampling at coincident nodes.
Vector inject(const Vector& fine, const Layout& coarse);

}  // namespace nlc
