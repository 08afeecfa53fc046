#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlc/cli/spec_parser.hpp"
#include "nlc/decomposition/gsn.hpp"
#include "nlc/decomposition/nasm.hpp"
#include "nlc/decomposition/subdomains.hpp"
#include "nlc/linalg/smoothers.hpp"
#include "nlc/problems/linear.hpp"
#include "nlc/problems/plaplacian.hpp"
#include "nlc/solvers/solver.hpp"
#include "oracles.hpp"

using namespace nlc;

namespace {

std::shared_ptr<PLaplacianProblem> small_plap(std::size_t n = 9) {
  PLaplacianParams params;
  params.nx = params.ny = n;
  return std::make_shared<PLaplacianProblem>(params);
}

Vector schwarz_once(const std::string& spec, ProblemPtr problem, const Vector& x, SchwarzVariant variant) {
  NasmSolver solver(parse_solver(spec), std::move(problem), true, variant);
  SolveStats stats;
  return solver.apply_once(x, stats);
}

/// Block-diagonal 6x6 system with two random 3x3 blocks.
std::shared_ptr<LinearProblem> two_blocks(std::mt19937& rng, oracle::Dense& a, std::vector<double>& b) {
  a = oracle::zeros(6, 6);
  for (std::size_t off : {0u, 3u}) {
    const auto block = oracle::random_diag_dominant(rng, 3, 1.0);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) a[off + i][off + j] = block[i][j];
    }
  }
  b = oracle::random_vector(rng, 6);
  return std::make_shared<LinearProblem>(oracle::sparse(a), oracle::vec(b));
}

}  // namespace

TEST(Gsn, DecoupledAffineBlocksSolvedInOneSweep) {
  oracle::Dense a = oracle::zeros(4, 4);
  for (std::size_t i = 0; i < 4; ++i) a[i][i] = 1.0 + static_cast<double>(i);
  LinearProblem problem(oracle::sparse(a), Vector{1.0, 1.0, 1.0, 1.0});
  Vector x(4);
  SolveStats stats;
  gsn_sweep(problem, x, GsnConfig{}, stats);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(x[i], 1.0 / (1.0 + static_cast<double>(i)));
}

TEST(Gsn, SingleNewtonStepSweepEqualsGaussSeidel) {
  Poisson1DProblem problem(17);
  const SparseMatrix a = problem.jacobian(Vector(17));
  std::mt19937 rng(21);
  const Vector x0 = oracle::vec(oracle::random_vector(rng, 17));
  Vector x_gsn = x0, x_sor = x0;
  SolveStats stats;
  GsnConfig cfg;
  cfg.max_block_it = 1;
  cfg.block_rtol = 0.0;
  gsn_sweep(problem, x_gsn, cfg, stats);
  sor_sweep(a, *problem.rhs(), x_sor, 1.0);
  EXPECT_LE(norm_inf(difference(x_gsn, x_sor)), 1e-14);
}

TEST(Gsn, SweepsPerApplication) {
  auto problem = small_plap();
  Vector x_solver = problem->initial_guess();
  Vector x_manual = x_solver;
  SolveStats stats;
  make_solver(parse_solver("gsn(sweeps=5,max_it=1)"), problem, true)->solve(x_solver, stats);
  for (int s = 0; s < 5; ++s) gsn_sweep(*problem, x_manual, GsnConfig{}, stats);
  EXPECT_EQ(x_solver.values(), x_manual.values());
}

TEST(Gsn, RequiresPointBlocks) {
  FunctionProblem problem(Layout::flat(2), [](const Vector& x, Vector& f) { f = x; });
  Vector x(2);
  SolveStats stats;
  EXPECT_THROW(gsn_sweep(problem, x, GsnConfig{}, stats), ConfigError);
}

TEST(Subdomains, OwnedBoxesPartitionTheGrid) {
  SubdomainDecomposition dd(Layout{17, 13, 1}, 3, 2, 2);
  std::vector<int> owners(17 * 13, 0);
  for (std::size_t b = 0; b < dd.size(); ++b) {
    for (std::size_t p : dd[b].owned_local) ++owners[dd[b].dofs[p]];
    EXPECT_LE(dd[b].overlap.i0 + 2, std::max<std::size_t>(dd[b].owned.i0, 2));
  }
  for (int count : owners) EXPECT_EQ(count, 1);
}

TEST(Subdomains, TooManyBoxesIsRejected) {
  EXPECT_THROW(SubdomainDecomposition(Layout{5, 5, 1}, 6, 1, 0), ConfigError);
}

TEST(Nasm, SingleSubdomainExactSolveReturnsSolution) {
  auto problem = small_plap();
  const std::string spec = "nasm(px=1,py=1,sub=newton(lpc=lu,rtol=1e-13,max_it=50))";
  const Vector x = schwarz_once(spec, problem, problem->initial_guess(), SchwarzVariant::nasm);
  SolveStats stats;
  EXPECT_LE(norm2(evaluate_residual(*problem, x, stats)), 1e-11);
}

TEST(Nasm, MatchingBlocksExactForBothVariants) {
  std::mt19937 rng(31);
  oracle::Dense a;
  std::vector<double> b;
  auto problem = two_blocks(rng, a, b);
  const auto x_star = oracle::solve(a, b);
  const Vector x0 = oracle::vec(oracle::random_vector(rng, 6));
  for (auto variant : {SchwarzVariant::nasm, SchwarzVariant::ras}) {
    const Vector x = schwarz_once("nasm(px=2,py=1,overlap=0)", problem, x0, variant);
    EXPECT_LE(oracle::max_abs_diff(x.values(), x_star), 1e-12);
  }
}

TEST(Nasm, ZeroOverlapVariantsCoincide) {
  auto problem = small_plap();
  const Vector x0 = problem->initial_guess();
  const Vector a = schwarz_once("nasm(px=2,py=2,overlap=0)", problem, x0, SchwarzVariant::nasm);
  const Vector b = schwarz_once("ras(px=2,py=2,overlap=0)", problem, x0, SchwarzVariant::ras);
  EXPECT_EQ(a.values(), b.values());
}

TEST(Nasm, ZeroCorrectionsLeaveIterateUnchanged) {
  auto problem = small_plap();
  const Vector x0 = problem->initial_guess();
  for (auto variant : {SchwarzVariant::nasm, SchwarzVariant::ras}) {
    const Vector x = schwarz_once("nasm(px=2,py=2,overlap=2,sub=newton(max_it=0))", problem, x0, variant);
    EXPECT_EQ(x.values(), x0.values());
  }
}

TEST(Nasm, RasContractionMatchesDenseOracle) {
  // 1D Poisson, two overlapping subdomains with exact solves: the error obeys
  //   e <- e - sum_B P~^B (A_B)^{-1} R^B A e.
  const std::size_t n = 21;
  Poisson1DProblem poisson(n);
  auto problem = std::make_shared<LinearProblem>(poisson.jacobian(Vector(n)), *poisson.rhs());
  const auto a = oracle::to_dense(problem->matrix());
  const auto x_star = oracle::solve(a, problem->rhs()->values());
  SubdomainDecomposition dd(problem->layout(), 2, 1, 3);
  std::mt19937 rng(41);
  Vector x = oracle::vec(oracle::random_vector(rng, n));
  NasmSolver ras(parse_solver("ras(px=2,py=1,overlap=3)"), problem, true, SchwarzVariant::ras);
  for (int sweep = 0; sweep < 3; ++sweep) {
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = x[i] - x_star[i];
    const auto ae = oracle::matvec(a, e);
    std::vector<double> expected = e;
    for (std::size_t b = 0; b < dd.size(); ++b) {
      const auto& dofs = dd[b].dofs;
      oracle::Dense local = oracle::zeros(dofs.size(), dofs.size());
      std::vector<double> rhs(dofs.size());
      for (std::size_t p = 0; p < dofs.size(); ++p) {
        rhs[p] = ae[dofs[p]];
        for (std::size_t q = 0; q < dofs.size(); ++q) local[p][q] = a[dofs[p]][dofs[q]];
      }
      const auto y = oracle::solve(local, rhs);
      for (std::size_t p : dd[b].owned_local) expected[dofs[p]] -= y[p];
    }
    SolveStats stats;
    x = ras.apply_once(x, stats);
    std::vector<double> got(n);
    for (std::size_t i = 0; i < n; ++i) got[i] = x[i] - x_star[i];
    EXPECT_LE(oracle::max_abs_diff(got, expected), 1e-10) << "sweep " << sweep;
  }
}

TEST(Nasm, ConvergesOnPLaplacian) {
  auto problem = small_plap(17);
  Vector x = problem->initial_guess();
  SolveStats stats;
  const auto out = make_solver(parse_solver("ras(px=2,py=2,overlap=2,rtol=1e-6,max_it=200)"), problem)->solve(x, stats);
  EXPECT_TRUE(is_converged(out.reason)) << to_string(out.reason);
}
