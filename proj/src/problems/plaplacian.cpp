#include "nlc/problems/plaplacian.hpp"

#include <cmath>

#include "nlc/linalg/sparse_matrix.hpp"

namespace nlc {

void PLaplacianParams::validate() const {
  if (!(p >= 1.0)) throw ConfigError("p-Laplacian exponent p must be >= 1");
  if (!(epsilon > 0.0)) throw ConfigError("p-Laplacian epsilon must be > 0");
  if (nx < 3 || ny < 3) throw ConfigError("p-Laplacian grid needs at least 3x3 nodes");
}

PLaplacianProblem::PLaplacianProblem(PLaplacianParams params)
    : params_(params), layout_{params.nx, params.ny, 1} {
  params_.validate();
  hx_ = 2.0 / static_cast<double>(params_.nx - 1);
  hy_ = 2.0 / static_cast<double>(params_.ny - 1);
  blocks_.block_size = 1;
  blocks_.residual = [this](const Vector& x, std::size_t node, double* out) {
    const std::size_t i = node % layout_.nx, j = node / layout_.nx;
    if (layout_.on_boundary(i, j)) {
      out[0] = x[node];
      return;
    }
    double r = -hx_ * hy_ * (params_.source + params_.bratu_lambda * std::exp(x[node]));
    for (std::size_t cj = j - 1; cj <= j; ++cj) {
      for (std::size_t ci = i - 1; ci <= i; ++ci) {
        cell_residual(x, ci, cj, [&](std::size_t ni, std::size_t nj, double v) {
          if (ni == i && nj == j) r += v;
        });
      }
    }
    out[0] = r;
  };
  blocks_.jacobian = [this](const Vector& x, std::size_t node, double* out) {
    const std::size_t i = node % layout_.nx, j = node / layout_.nx;
    if (layout_.on_boundary(i, j)) {
      out[0] = 1.0;
      return;
    }
    double d = -hx_ * hy_ * params_.bratu_lambda * std::exp(x[node]);
    for (std::size_t cj = j - 1; cj <= j; ++cj) {
      for (std::size_t ci = i - 1; ci <= i; ++ci) {
        cell_jacobian(x, ci, cj, [&](std::size_t ri, std::size_t rj, std::size_t ki, std::size_t kj, double v) {
          if (ri == i && rj == j && ki == i && kj == j) d += v;
        });
      }
    }
    out[0] = d;
  };
}

double PLaplacianProblem::value(const Vector& x, std::size_t i, std::size_t j) const {
  return layout_.on_boundary(i, j) ? 0.0 : x[layout_.index(i, j)];
}

// Corner c = (a, b) of cell (ci, cj) uses the x-edge on row cj + b and the y-edge on column ci + a.
template <class Emit>
void PLaplacianProblem::cell_residual(const Vector& x, std::size_t ci, std::size_t cj, Emit&& emit) const {
  const double u00 = value(x, ci, cj), u10 = value(x, ci + 1, cj);
  const double u01 = value(x, ci, cj + 1), u11 = value(x, ci + 1, cj + 1);
  const double w = 0.25 * hx_ * hy_;
  const double q = 0.5 * (params_.p - 2.0);
  const double eps2 = params_.epsilon * params_.epsilon;
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < 2; ++a) {
      const double gx = b == 0 ? (u10 - u00) / hx_ : (u11 - u01) / hx_;
      const double gy = a == 0 ? (u01 - u00) / hy_ : (u11 - u10) / hy_;
      const double eta = std::pow(eps2 + 0.5 * (gx * gx + gy * gy), q);
      const double fx = w * eta * gx / hx_, fy = w * eta * gy / hy_;
      // d gx / d u: -1/hx at (ci, cj+b), +1/hx at (ci+1, cj+b); d gy / d u similarly along y.
      emit(ci, cj + b, -fx);
      emit(ci + 1, cj + b, fx);
      emit(ci + a, cj, -fy);
      emit(ci + a, cj + 1, fy);
    }
  }
}

template <class Emit>
void PLaplacianProblem::cell_jacobian(const Vector& x, std::size_t ci, std::size_t cj, Emit&& emit) const {
  const double u00 = value(x, ci, cj), u10 = value(x, ci + 1, cj);
  const double u01 = value(x, ci, cj + 1), u11 = value(x, ci + 1, cj + 1);
  const double w = 0.25 * hx_ * hy_;
  const double q = 0.5 * (params_.p - 2.0);
  const double eps2 = params_.epsilon * params_.epsilon;
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < 2; ++a) {
      const double gx = b == 0 ? (u10 - u00) / hx_ : (u11 - u01) / hx_;
      const double gy = a == 0 ? (u01 - u00) / hy_ : (u11 - u10) / hy_;
      const double base = eps2 + 0.5 * (gx * gx + gy * gy);
      const double eta = std::pow(base, q);
      const double deta = q * std::pow(base, q - 1.0);
      const double hxx = w * (eta + deta * gx * gx), hyy = w * (eta + deta * gy * gy);
      const double hxy = w * deta * gx * gy;
      // G maps the four node values to (gx, gy).
      struct Tap {
        std::size_t i, j;
        double dgx, dgy;
      };
      Tap taps[4] = {{ci, cj, 0.0, 0.0}, {ci + 1, cj, 0.0, 0.0}, {ci, cj + 1, 0.0, 0.0}, {ci + 1, cj + 1, 0.0, 0.0}};
      auto tap = [&](std::size_t i, std::size_t j) -> Tap& { return taps[(j - cj) * 2 + (i - ci)]; };
      tap(ci, cj + b).dgx -= 1.0 / hx_;
      tap(ci + 1, cj + b).dgx += 1.0 / hx_;
      tap(ci + a, cj).dgy -= 1.0 / hy_;
      tap(ci + a, cj + 1).dgy += 1.0 / hy_;
      for (const Tap& r : taps) {
        if (r.dgx == 0.0 && r.dgy == 0.0) continue;
        for (const Tap& c : taps) {
          if (c.dgx == 0.0 && c.dgy == 0.0) continue;
          const double v = r.dgx * (hxx * c.dgx + hxy * c.dgy) + r.dgy * (hxy * c.dgx + hyy * c.dgy);
          emit(r.i, r.j, c.i, c.j, v);
        }
      }
    }
  }
}

void PLaplacianProblem::apply(const Vector& x, Vector& f) const {
  const std::size_t nx = layout_.nx, ny = layout_.ny;
  if (f.layout() != layout_) f = Vector(layout_);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = layout_.index(i, j);
      f[k] = layout_.on_boundary(i, j) ? x[k]
                                        : -hx_ * hy_ * (params_.source + params_.bratu_lambda * std::exp(x[k]));
    }
  }
  for (std::size_t cj = 0; cj + 1 < ny; ++cj) {
    for (std::size_t ci = 0; ci + 1 < nx; ++ci) {
      cell_residual(x, ci, cj, [&](std::size_t i, std::size_t j, double v) {
        if (!layout_.on_boundary(i, j)) f[layout_.index(i, j)] += v;
      });
    }
  }
}

SparseMatrix PLaplacianProblem::jacobian(const Vector& x) const {
  const std::size_t nx = layout_.nx, ny = layout_.ny;
  TripletBuilder tb(layout_.size(), layout_.size() * 17);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = layout_.index(i, j);
      tb.add(k, k, layout_.on_boundary(i, j) ? 1.0 : -hx_ * hy_ * params_.bratu_lambda * std::exp(x[k]));
    }
  }
  for (std::size_t cj = 0; cj + 1 < ny; ++cj) {
    for (std::size_t ci = 0; ci + 1 < nx; ++ci) {
      cell_jacobian(x, ci, cj, [&](std::size_t ri, std::size_t rj, std::size_t ki, std::size_t kj, double v) {
        if (!layout_.on_boundary(ri, rj) && !layout_.on_boundary(ki, kj)) {
          tb.add(layout_.index(ri, rj), layout_.index(ki, kj), v);
        }
      });
    }
  }
  return tb.build();
}

bool PLaplacianProblem::coarsenable() const {
  return params_.nx % 2 == 1 && params_.ny % 2 == 1 && (params_.nx + 1) / 2 >= 3 && (params_.ny + 1) / 2 >= 3;
}

std::shared_ptr<NonlinearProblem> PLaplacianProblem::coarsen() const {
  if (!coarsenable()) return nullptr;
  PLaplacianParams coarse = params_;
  coarse.nx = (params_.nx + 1) / 2;
  coarse.ny = (params_.ny + 1) / 2;
  return std::make_shared<PLaplacianProblem>(coarse);
}

Vector PLaplacianProblem::initial_guess() const {
  Vector u(layout_);
  for (std::size_t j = 0; j < layout_.ny; ++j) {
    const double y = -1.0 + static_cast<double>(j) * hy_;
    for (std::size_t i = 0; i < layout_.nx; ++i) {
      const double x = -1.0 + static_cast<double>(i) * hx_;
      u[layout_.index(i, j)] = layout_.on_boundary(i, j) ? 0.0 : x * y * (1.0 - x * x) * (1.0 - y * y);
    }
  }
  return u;
}

}  // namespace nlc
