#include "nlc/linesearch/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "nlc/core/problem.hpp"

namespace nlc {

const char* to_string(LineSearchKind kind) {
  switch (kind) {
    case LineSearchKind::bt: return "bt";
    case LineSearchKind::cp: return "cp";
    case LineSearchKind::l2: return "l2";
    case LineSearchKind::basic: return "basic";
    case LineSearchKind::none: return "none";
  }
  return "none";
}

LineSearchKind line_search_from_string(const std::string& name) {
  if (name == "bt") return LineSearchKind::bt;
  if (name == "cp") return LineSearchKind::cp;
  if (name == "l2") return LineSearchKind::l2;
  if (name == "basic") return LineSearchKind::basic;
  if (name == "none") return LineSearchKind::none;
  throw ConfigError("unknown line search '" + name + "' (expected bt, cp, l2, basic or none)");
}

void LineSearchConfig::validate() const {
  if (!(lambda0 >= 0.0)) throw ConfigError("line search damping must be >= 0");
  if (kind != LineSearchKind::basic && kind != LineSearchKind::none && !(lambda0 > 0.0)) {
    throw ConfigError("line search lambda0 must be > 0");
  }
  if (its < 1) throw ConfigError("line search iteration count must be >= 1");
  if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("line search alpha must lie in (0, 0.5)");
  if (order != 1 && order != 2) throw ConfigError("line search order must be 1 or 2");
}

namespace {

struct Trial {
  Vector x;
  std::optional<Vector> r;  // empty when the evaluation produced NaN/Inf
};

Trial trial(const ResidualFn& residual, const Vector& x, const Vector& y, double lambda, SolveStats& stats) {
  Trial t{axpy(lambda, y, x), std::nullopt};
  try {
    t.r = residual(t.x, stats);
  } catch (const NonFiniteResidual&) {
  }
  return t;
}

double sq_norm(const std::optional<Vector>& r) {
  if (!r) return std::numeric_limits<double>::infinity();
  const double n = norm2(*r);
  return n * n;
}

LineSearchOutcome finish(Trial t, double lambda, bool ok, long evals_before, const SolveStats& stats) {
  LineSearchOutcome out;
  out.lambda = lambda;
  out.succeeded = ok;
  out.x = std::move(t.x);
  out.has_residual = t.r.has_value();
  if (t.r) out.r = std::move(*t.r);
  out.func_evals_used = stats.func_evals - evals_before;
  return out;
}

}  // namespace

LineSearchOutcome bt_search(const ResidualFn& residual, const Vector& x, const Vector& r, const Vector& y,
                            double slope, const LineSearchConfig& cfg, SolveStats& stats) {
  const long before = stats.func_evals;
  const double f0 = 0.5 * dot(r, r);
  if (!(slope < 0.0)) {
    LineSearchOutcome out;
    out.lambda = 0.0;
    out.succeeded = false;
    out.x = x;
    out.r = r;
    out.has_residual = true;
    return out;
  }
  double lambda = cfg.lambda0;
  Trial t = trial(residual, x, y, lambda, stats);
  double f1 = 0.5 * sq_norm(t.r);
  if (f1 <= f0 + cfg.alpha * lambda * slope) return finish(std::move(t), lambda, true, before, stats);

  // Quadratic backtrack through f0, slope and f(lambda).
  double lambda_prev = lambda, f_prev = f1;
  double lq = std::isfinite(f1) ? -slope * lambda * lambda / (2.0 * (f1 - f0 - slope * lambda)) : 0.1 * lambda;
  lambda = std::clamp(lq, 0.1 * lambda, 0.5 * lambda);
  t = trial(residual, x, y, lambda, stats);
  f1 = 0.5 * sq_norm(t.r);
  if (f1 <= f0 + cfg.alpha * lambda * slope) return finish(std::move(t), lambda, true, before, stats);

  for (int it = 0; it < cfg.max_backtracks; ++it) {
    if (lambda < cfg.lambda_min) break;
    double lc;
    if (!std::isfinite(f1) || !std::isfinite(f_prev)) {
      lc = 0.1 * lambda;
    } else {
      // Cubic through f0, slope, f(lambda) and f(lambda_prev).
      const double t1 = f1 - f0 - slope * lambda;
      const double t2 = f_prev - f0 - slope * lambda_prev;
      const double denom = lambda - lambda_prev;
      const double a = (t1 / (lambda * lambda) - t2 / (lambda_prev * lambda_prev)) / denom;
      const double b = (-lambda_prev * t1 / (lambda * lambda) + lambda * t2 / (lambda_prev * lambda_prev)) / denom;
      if (a == 0.0) {
        lc = -slope / (2.0 * b);
      } else {
        const double d = std::max(b * b - 3.0 * a * slope, 0.0);
        lc = (-b + std::sqrt(d)) / (3.0 * a);
      }
      if (!std::isfinite(lc)) lc = 0.5 * lambda;
    }
    lambda_prev = lambda;
    f_prev = f1;
    lambda = std::clamp(lc, 0.1 * lambda, 0.5 * lambda);
    t = trial(residual, x, y, lambda, stats);
    f1 = 0.5 * sq_norm(t.r);
    if (f1 <= f0 + cfg.alpha * lambda * slope) return finish(std::move(t), lambda, true, before, stats);
  }
  return finish(std::move(t), lambda, false, before, stats);
}

LineSearchOutcome cp_search(const ResidualFn& residual, const Vector& x, const Vector& r, const Vector& y,
                            const LineSearchConfig& cfg, SolveStats& stats) {
  const long before = stats.func_evals;
  double lam_old = 0.0;
  double g_old = dot(y, r);
  double lam = cfg.lambda0;
  bool ok = true;
  for (int i = 0; i < cfg.its; ++i) {
    Trial t = trial(residual, x, y, lam, stats);
    if (!t.r) {
      ok = false;
      lam *= 0.5;
      break;
    }
    const double g = dot(y, *t.r);
    if (g == 0.0) return finish(std::move(t), lam, true, before, stats);
    double next;
    bool parabola = false;
    if (cfg.order == 2) {
      // Parabola through (lam_old, g_old), (mid, g_mid), (lam, g); root nearest lam.
      const double mid = 0.5 * (lam + lam_old);
      Trial tm = trial(residual, x, y, mid, stats);
      if (tm.r) {
        const double gm = dot(y, *tm.r);
        const double h = 0.5 * (lam - lam_old);
        const double c2 = (g - 2.0 * gm + g_old) / (2.0 * h * h);
        const double c1 = (g - g_old) / (2.0 * h);
        // g(mid + s) = gm + c1 s + c2 s^2
        if (c2 != 0.0) {
          const double disc = c1 * c1 - 4.0 * c2 * gm;
          if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double s1 = (-c1 + sq) / (2.0 * c2), s2 = (-c1 - sq) / (2.0 * c2);
            const double r1 = mid + s1, r2 = mid + s2;
            next = std::abs(r1 - lam) < std::abs(r2 - lam) ? r1 : r2;
            parabola = true;
          }
        }
      }
    }
    if (!parabola) {
      if (std::abs(g - g_old) < 1e-30) {
        ok = false;
        break;
      }
      next = lam - g * (lam - lam_old) / (g - g_old);
    }
    if (!std::isfinite(next)) {
      ok = false;
      break;
    }
    if (next <= 0.0) next = 0.5 * lam;  // negative critical point: fall back to a shortened step
    lam_old = lam;
    g_old = g;
    lam = next;
  }
  Trial final_trial = trial(residual, x, y, lam, stats);
  if (!final_trial.r) ok = false;
  return finish(std::move(final_trial), lam, ok, before, stats);
}

LineSearchOutcome l2_search(const ResidualFn& residual, const Vector& x, const Vector& r, const Vector& y,
                            const LineSearchConfig& cfg, SolveStats& stats) {
  const long before = stats.func_evals;
  double lam_old = 0.0;
  double phi_old = dot(r, r);
  double lam = cfg.lambda0;
  bool ok = true;
  for (int i = 0; i < cfg.its; ++i) {
    const double mid = 0.5 * (lam + lam_old);
    Trial tm = trial(residual, x, y, mid, stats);
    Trial ti = trial(residual, x, y, lam, stats);
    const double phi_mid = sq_norm(tm.r);
    const double phi = sq_norm(ti.r);
    if (!std::isfinite(phi_mid) || !std::isfinite(phi)) {
      ok = false;
      lam = 0.5 * lam;
      break;
    }
    const double delta = lam - lam_old;
    const double d_new = (3.0 * phi - 4.0 * phi_mid + phi_old) / delta;
    const double d_old = (-3.0 * phi_old + 4.0 * phi_mid - phi) / delta;
    const double diff = d_new - d_old;
    if (!(std::abs(diff) > 1e-30 * std::max(1.0, std::abs(phi_old)))) {
      ok = false;
      break;
    }
    const double next = lam - d_new * delta / diff;
    if (!std::isfinite(next)) {
      ok = false;
      break;
    }
    lam_old = lam;
    phi_old = phi;
    lam = next;
  }
  Trial final_trial = trial(residual, x, y, lam, stats);
  if (!final_trial.r) ok = false;
  return finish(std::move(final_trial), lam, ok, before, stats);
}

LineSearchOutcome basic_step(const ResidualFn& residual, const Vector& x, const Vector& y,
                             const LineSearchConfig& cfg, SolveStats& stats) {
  const long before = stats.func_evals;
  Trial t = trial(residual, x, y, cfg.lambda0, stats);
  const bool ok = t.r.has_value();
  return finish(std::move(t), cfg.lambda0, ok, before, stats);
}

LineSearchOutcome line_search(const ResidualFn& residual, const Vector& x, const Vector& r, const Vector& y,
                              double slope, const LineSearchConfig& cfg, SolveStats& stats) {
  switch (cfg.kind) {
    case LineSearchKind::bt: return bt_search(residual, x, r, y, slope, cfg, stats);
    case LineSearchKind::cp: return cp_search(residual, x, r, y, cfg, stats);
    case LineSearchKind::l2: return l2_search(residual, x, r, y, cfg, stats);
    case LineSearchKind::basic: return basic_step(residual, x, y, cfg, stats);
    case LineSearchKind::none: {
      LineSearchConfig full = cfg;
      full.lambda0 = 1.0;
      return basic_step(residual, x, y, full, stats);
    }
  }
  throw std::logic_error("unreachable line search kind");
}

}  // namespace nlc
