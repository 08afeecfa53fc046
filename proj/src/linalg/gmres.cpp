#include "nlc/linalg/gmres.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nlc/linalg/sparse_matrix.hpp"

namespace nlc {

LinearOperator matrix_operator(const SparseMatrix& a) {
  return [&a](const Vector& in, Vector& out) { a.multiply(in.data(), out.data()); };
}

KrylovResult gmres(const LinearOperator& a, const LinearOperator& pc, const Vector& b, Vector& x,
                   const KrylovConfig& cfg, SolveStats& stats) {
  if (cfg.restart < 1) throw std::invalid_argument("gmres: restart must be >= 1");
  if (b.size() != x.size()) throw std::invalid_argument("gmres: dimension mismatch");
  const bool left = pc && cfg.side == PcSide::left;
  const bool right = pc && cfg.side == PcSide::right;
  const Layout layout = b.layout();
  const int m = cfg.restart;

  Vector tmp(layout), w(layout);
  auto residual = [&](Vector& out) {
    a(x, tmp);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = b[i] - tmp[i];
    if (left) {
      pc(out, w);
      ++stats.pc_applies;
      out = w;
    }
  };

  KrylovResult result;
  Vector r(layout);
  residual(r);
  double beta = norm2(r);
  result.initial_norm = beta;
  result.final_norm = beta;
  const double target = std::max(cfg.rtol * beta, cfg.atol);
  if (beta <= target || beta == 0.0) {
    result.converged = true;
    return result;
  }

  std::vector<Vector> v(static_cast<std::size_t>(m) + 1, Vector(layout));
  std::vector<Vector> z;  // preconditioned directions for right preconditioning
  if (right) z.assign(static_cast<std::size_t>(m), Vector(layout));
  std::vector<double> h(static_cast<std::size_t>((m + 1) * m), 0.0);
  std::vector<double> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m));
  std::vector<double> g(static_cast<std::size_t>(m) + 1);
  auto H = [&](int i, int j) -> double& { return h[static_cast<std::size_t>(i * m + j)]; };

  while (result.iterations < cfg.max_it) {
    v[0] = r;
    scale(1.0 / beta, v[0]);
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    int k = 0;
    bool done = false;
    for (; k < m && result.iterations < cfg.max_it; ++k) {
      Vector& vk1 = v[static_cast<std::size_t>(k) + 1];
      if (right) {
        pc(v[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(k)]);
        ++stats.pc_applies;
        a(z[static_cast<std::size_t>(k)], vk1);
      } else if (left) {
        a(v[static_cast<std::size_t>(k)], tmp);
        pc(tmp, vk1);
        ++stats.pc_applies;
      } else {
        a(v[static_cast<std::size_t>(k)], vk1);
      }
      ++result.iterations;
      ++stats.linear_its;

      const double before = norm2(vk1);
      for (int i = 0; i <= k; ++i) {
        H(i, k) = dot(v[static_cast<std::size_t>(i)], vk1);
        axpy(-H(i, k), v[static_cast<std::size_t>(i)], vk1);
      }
      double hnext = norm2(vk1);
      if (hnext < 1e-3 * before) {
        for (int i = 0; i <= k; ++i) {
          const double c = dot(v[static_cast<std::size_t>(i)], vk1);
          H(i, k) += c;
          axpy(-c, v[static_cast<std::size_t>(i)], vk1);
        }
        hnext = norm2(vk1);
      }
      for (int i = 0; i < k; ++i) {
        const double t = cs[static_cast<std::size_t>(i)] * H(i, k) + sn[static_cast<std::size_t>(i)] * H(i + 1, k);
        H(i + 1, k) = -sn[static_cast<std::size_t>(i)] * H(i, k) + cs[static_cast<std::size_t>(i)] * H(i + 1, k);
        H(i, k) = t;
      }
      const double denom = std::hypot(H(k, k), hnext);
      const bool happy = hnext <= 1e-14 * before;
      if (denom == 0.0) {
        done = true;
        break;
      }
      cs[static_cast<std::size_t>(k)] = H(k, k) / denom;
      sn[static_cast<std::size_t>(k)] = hnext / denom;
      H(k, k) = denom;
      g[static_cast<std::size_t>(k) + 1] = -sn[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];
      g[static_cast<std::size_t>(k)] = cs[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];
      result.final_norm = std::abs(g[static_cast<std::size_t>(k) + 1]);
      if (!happy) scale(1.0 / hnext, vk1);
      if (result.final_norm <= target || happy) {
        ++k;
        done = true;
        break;
      }
    }

    // Back substitution for the k-dimensional correction.
    std::vector<double> y(static_cast<std::size_t>(k), 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) s -= H(i, j) * y[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] = s / H(i, i);
    }
    for (int i = 0; i < k; ++i) {
      axpy(y[static_cast<std::size_t>(i)], right ? z[static_cast<std::size_t>(i)] : v[static_cast<std::size_t>(i)], x);
    }
    residual(r);
    beta = norm2(r);
    result.final_norm = beta;
    if (beta <= target || (done && beta <= 10.0 * target)) {
      result.converged = beta <= target || done;
      return result;
    }
    if (beta == 0.0) break;
  }
  result.converged = result.final_norm <= target;
  return result;
}

}  // namespace nlc
