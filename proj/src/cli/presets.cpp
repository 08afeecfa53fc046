#include "nlc/cli/presets.hpp"

#include "nlc/cli/spec_parser.hpp"

namespace nlc {

namespace {

ProblemConfig cavity(double grashof) {
  ProblemConfig c;
  c.kind = "cavity";
  c.cavity.grashof = grashof;
  c.cavity.prandtl = 1.0;
  c.cavity.lid_velocity = 100.0;
  c.cavity.nx = c.cavity.ny = 49;
  return c;
}

ProblemConfig plaplacian() {
  ProblemConfig c;
  c.kind = "plaplacian";
  c.plaplacian.nx = c.plaplacian.ny = 65;
  return c;
}

RunOptions opts(double rtol, int max_it) {
  RunOptions o;
  o.rtol = rtol;
  o.max_it = max_it;
  return o;
}

std::vector<Preset> build() {
  const std::string fas_gsn = "fas(smoother=gsn(sweeps=6))";
  const std::string fas_newton = "fas(smoother=newton(lpc=sor,ls=basic,max_it=6,ksp_max_it=20))";
  return {
      {"cavity-gr1e4-newton", "Newton-LU on the cavity at Gr=1e4", cavity(1e4), "newton(lpc=lu,ls=bt)",
       opts(1e-8, 50)},
      {"cavity-gr5e4-newton-lu", "Newton-LU on the cavity at Gr=5e4 (stagnates)", cavity(5e4),
       "newton(lpc=lu,ls=bt)", opts(1e-8, 30)},
      {"cavity-gr5e4-fas-gsn", "FAS with six GSN sweeps per smoothing at Gr=5e4 (oscillates)", cavity(5e4), fas_gsn,
       opts(1e-8, 25)},
      {"cavity-gr5e4-anderson-fas-gsn", "Anderson right-preconditioned by FAS/GSN at Gr=5e4", cavity(5e4),
       "anderson(rp=" + fas_gsn + ",m=30)", opts(1e-8, 50)},
      {"cavity-gr5e4-anderson-fas-newton", "Anderson right-preconditioned by FAS with Newton smoothers at Gr=5e4",
       cavity(5e4), "anderson(rp=" + fas_newton + ",m=30)", opts(1e-8, 50)},
      {"plaplacian-newton-asm", "Newton-Krylov with additive Schwarz on the p-Laplacian", plaplacian(),
       "newton(lpc=asm)", opts(1e-8, 400)},
      {"plaplacian-ras-newton-asm", "RAS * (Newton-Krylov with additive Schwarz) on the p-Laplacian", plaplacian(),
       "composite(type=multiplicative,ras,newton(lpc=asm))", opts(1e-8, 400)},
      {"plaplacian-qn-ras", "Quasi-Newton left-preconditioned by RAS on the p-Laplacian", plaplacian(),
       "qn(lp=ras,ls=cp)", opts(1e-8, 400)},
      {"plaplacian-nrich-ras", "Nonlinear Richardson left-preconditioned by RAS on the p-Laplacian", plaplacian(),
       "nrich(lp=ras,ls=cp)", opts(1e-8, 2000)},
      {"plaplacian-aspin", "ASPIN on the p-Laplacian", plaplacian(), "newton(lp=ras)", opts(1e-8, 50)},
      {"plaplacian-fas", "FAS with GSN smoothing on the p-Laplacian", plaplacian(), "fas(smoother=gsn(sweeps=2))",
       opts(1e-8, 200)},
  };
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(const std::string& name) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const Preset& p : presets()) {
    if (p.name == name) return p;
    const std::size_t d = levenshtein(name, p.name);
    if (d < best_d) {
      best_d = d;
      best = p.name;
    }
  }
  throw ConfigError("unknown preset '" + name + "'; did you mean '" + best + "'? (see --list-presets)");
}

}  // namespace nlc
