#include "nlc/multilevel/transfer.hpp"

#include <stdexcept>
#include <string>

namespace nlc {

namespace {
constexpr double kWeights[3] = {0.25, 0.5, 0.25};

void require_pair(const Layout& fine, const Layout& coarse, const char* what) {
  if (coarse != coarse_layout(fine)) {
    throw std::invalid_argument(std::string(what) + ": layouts are not adjacent grid levels");
  }
}

/// Full-weighting sum at coarse node (ci, cj) for field f. Returns (weighted sum, total weight).
std::pair<double, double> fw_sum(const Vector& fine, std::size_t ci, std::size_t cj, std::size_t f) {
  const Layout& lf = fine.layout();
  const long i0 = static_cast<long>(2 * ci), j0 = static_cast<long>(lf.ny == 1 ? cj : 2 * cj);
  double sum = 0.0, weight = 0.0;
  const int jr = lf.ny == 1 ? 0 : 1;
  for (int dj = -jr; dj <= jr; ++dj) {
    const long j = j0 + dj;
    if (j < 0 || j >= static_cast<long>(lf.ny)) continue;
    const double wj = lf.ny == 1 ? 1.0 : kWeights[dj + 1];
    for (int di = -1; di <= 1; ++di) {
      const long i = i0 + di;
      if (i < 0 || i >= static_cast<long>(lf.nx)) continue;
      const double w = wj * kWeights[di + 1];
      sum += w * fine[lf.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j), f)];
      weight += w;
    }
  }
  return {sum, weight};
}
}  // namespace

std::size_t coarse_extent(std::size_t n) { return n == 1 ? 1 : (n + 1) / 2; }

Layout coarse_layout(const Layout& fine) {
  return Layout{coarse_extent(fine.nx), coarse_extent(fine.ny), fine.dof};
}

bool can_coarsen(const Layout& fine) {
  auto ok = [](std::size_t n) { return n % 2 == 1 && (n + 1) / 2 >= 3; };
  return ok(fine.nx) && (fine.ny == 1 || ok(fine.ny));
}

Vector restrict_full_weighting(const Vector& fine, const Layout& coarse) {
  require_pair(fine.layout(), coarse, "restrict");
  Vector out(coarse);
  for (std::size_t cj = 0; cj < coarse.ny; ++cj) {
    for (std::size_t ci = 0; ci < coarse.nx; ++ci) {
      for (std::size_t f = 0; f < coarse.dof; ++f) {
        auto [sum, weight] = fw_sum(fine, ci, cj, f);
        out[coarse.index(ci, cj, f)] = sum / weight;
      }
    }
  }
  return out;
}

Vector restrict_residual(const Vector& fine, const Layout& coarse) {
  require_pair(fine.layout(), coarse, "restrict_residual");
  const Layout& lf = fine.layout();
  const double scale = lf.ny == 1 ? 2.0 : 4.0;
  Vector out(coarse);
  for (std::size_t cj = 0; cj < coarse.ny; ++cj) {
    for (std::size_t ci = 0; ci < coarse.nx; ++ci) {
      const bool boundary = coarse.on_boundary(ci, cj);
      for (std::size_t f = 0; f < coarse.dof; ++f) {
        if (boundary) {
          out[coarse.index(ci, cj, f)] = fine[lf.index(2 * ci, lf.ny == 1 ? 0 : 2 * cj, f)];
        } else {
          out[coarse.index(ci, cj, f)] = scale * fw_sum(fine, ci, cj, f).first;
        }
      }
    }
  }
  return out;
}

Vector prolong(const Vector& coarse, const Layout& fine) {
  require_pair(fine, coarse.layout(), "prolong");
  const Layout& lc = coarse.layout();
  Vector out(fine);
  for (std::size_t j = 0; j < fine.ny; ++j) {
    const std::size_t ja = fine.ny == 1 ? 0 : j / 2, jb = fine.ny == 1 ? 0 : (j + 1) / 2;
    for (std::size_t i = 0; i < fine.nx; ++i) {
      const std::size_t ia = i / 2, ib = (i + 1) / 2;
      for (std::size_t f = 0; f < fine.dof; ++f) {
        out[fine.index(i, j, f)] = 0.25 * (coarse[lc.index(ia, ja, f)] + coarse[lc.index(ib, ja, f)] +
                                           coarse[lc.index(ia, jb, f)] + coarse[lc.index(ib, jb, f)]);
      }
    }
  }
  return out;
}

Vector inject(const Vector& fine, const Layout& coarse) {
  require_pair(fine.layout(), coarse, "inject");
  const Layout& lf = fine.layout();
  Vector out(coarse);
  for (std::size_t cj = 0; cj < coarse.ny; ++cj) {
    for (std::size_t ci = 0; ci < coarse.nx; ++ci) {
      for (std::size_t f = 0; f < coarse.dof; ++f) {
        out[coarse.index(ci, cj, f)] = fine[lf.index(2 * ci, lf.ny == 1 ? 0 : 2 * cj, f)];
      }
    }
  }
  return out;
}

}  // namespace nlc
