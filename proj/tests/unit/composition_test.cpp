#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlc/cli/spec_parser.hpp"
#include "nlc/composition/composite.hpp"
#include "nlc/composition/preconditioning.hpp"
#include "nlc/problems/linear.hpp"
#include "nlc/problems/plaplacian.hpp"
#include "nlc/solvers/solver.hpp"
#include "oracles.hpp"

using namespace nlc;

namespace {

std::shared_ptr<LinearProblem> affine(const oracle::Dense& a, const std::vector<double>& b) {
  return std::make_shared<LinearProblem>(oracle::sparse(a), oracle::vec(b));
}

Vector solve_with(const std::string& spec, ProblemPtr problem, Vector x, SolveStats& stats) {
  make_solver(parse_solver(spec), std::move(problem))->solve(x, stats);
  return x;
}

std::shared_ptr<FunctionProblem> mildly_nonlinear() {
  return std::make_shared<FunctionProblem>(
      Layout::flat(2),
      [](const Vector& x, Vector& f) { f = Vector{2.0 * x[0] + 0.1 * x[1] * x[1] - 1.0, x[1] + 0.2 * std::sin(x[0])}; },
      [](const Vector& x) {
        return SparseMatrix::from_dense(2, {2.0, 0.2 * x[1], 0.2 * std::cos(x[0]), 1.0});
      });
}

}  // namespace

TEST(AdditiveWeights, IdenticalResidualsGiveUniformWeights) {
  const Vector r{1.0, -2.0, 0.5};
  const auto w = additive_weights({r, r, r});
  ASSERT_EQ(w.size(), 3u);
  for (double v : w) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
}

TEST(AdditiveWeights, ExactChildIsSelected) {
  const auto w = additive_weights({Vector{0.3, 0.9}, Vector{0.0, 0.0}});
  EXPECT_NEAR(w[0], 0.0, 1e-8);
  EXPECT_NEAR(w[1], 1.0, 1e-8);
}

TEST(AdditiveWeights, SumToOneAndMinimizeNorm) {
  std::mt19937 rng(8);
  std::vector<Vector> rs;
  for (int k = 0; k < 3; ++k) rs.push_back(oracle::vec(oracle::random_vector(rng, 5)));
  const auto w = additive_weights(rs);
  EXPECT_NEAR(w[0] + w[1] + w[2], 1.0, 1e-12);
  auto combined = [&](const std::vector<double>& a) {
    std::vector<double> c(5, 0.0);
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::size_t i = 0; i < 5; ++i) c[i] += a[k] * rs[k][i];
    }
    return std::sqrt(oracle::dot(c, c));
  };
  const double best = combined(w);
  for (double da : {-0.01, 0.01}) {
    EXPECT_LE(best, combined({w[0] + da, w[1] - da, w[2]}) + 1e-14);
    EXPECT_LE(best, combined({w[0], w[1] + da, w[2] - da}) + 1e-14);
  }
}

TEST(Composite, ChildPointsCoincide) {
  auto problem = mildly_nonlinear();
  SolveStats stats;
  const Vector x0{0.4, 0.4};
  const Vector once = solve_with("newton(lpc=lu,max_it=1)", problem, x0, stats);
  const Vector both =
      solve_with("composite(type=additive,newton(lpc=lu),newton(lpc=lu),max_it=1)", problem, x0, stats);
  EXPECT_NEAR(both[0], once[0], 1e-15);
  EXPECT_NEAR(both[1], once[1], 1e-15);
}

TEST(Composite, FixedWeightsReproduceFirstChild) {
  auto problem = mildly_nonlinear();
  SolveStats stats;
  const Vector x0{0.4, 0.4};
  const Vector child = solve_with("newton(lpc=lu,max_it=1)", problem, x0, stats);
  const Vector comp = solve_with("composite(type=additive,weights=\"1,0\",newton(lpc=lu),nrich,max_it=1)", problem, x0,
                                 stats);
  EXPECT_EQ(comp.values(), child.values());
}

TEST(Composite, MultiplicativeWithNoOpEqualsFirstChild) {
  auto problem = mildly_nonlinear();
  SolveStats stats;
  const Vector x0{0.4, 0.4};
  const Vector child = solve_with("nrich(max_it=1)", problem, x0, stats);
  const Vector comp =
      solve_with("composite(type=multiplicative,nrich,newton(max_it=0),max_it=1)", problem, x0, stats);
  EXPECT_EQ(comp.values(), child.values());
}

TEST(Composite, TwoExactSolversConvergeInOneStep) {
  auto problem = affine({{3.0, 1.0}, {1.0, 2.0}}, {1.0, 1.0});
  Vector x{5.0, -5.0};
  SolveStats stats;
  const auto out = make_solver(parse_solver("composite(type=multiplicative,newton(lpc=lu),newton(lpc=lu))"), problem)
                       ->solve(x, stats);
  EXPECT_TRUE(is_converged(out.reason));
  EXPECT_EQ(out.iterations, 1);
}

TEST(Composite, MultiplicativeGaussSeidelMatchesIterationMatrix) {
  // Two linear Gauss-Seidel sweeps compose to E_2 E_1 with E = I - (D + L)^{-1} A.
  const std::size_t n = 7;
  Poisson1DProblem poisson(n);
  auto problem = std::make_shared<LinearProblem>(poisson.jacobian(Vector(n)), *poisson.rhs());
  const auto a = oracle::to_dense(problem->matrix());
  const auto b = problem->rhs()->values();
  const auto x_star = oracle::solve(a, b);
  std::mt19937 rng(6);
  const auto x0 = oracle::random_vector(rng, n);

  auto gs_error = [&](const std::vector<double>& e) {
    oracle::Dense lower = oracle::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) lower[i][j] = a[i][j];
    }
    const auto correction = oracle::solve(lower, oracle::matvec(a, e));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = e[i] - correction[i];
    return out;
  };
  std::vector<double> e0(n);
  for (std::size_t i = 0; i < n; ++i) e0[i] = x0[i] - x_star[i];
  const auto expected = gs_error(gs_error(e0));

  SolveStats stats;
  const Vector x = solve_with(
      "composite(type=multiplicative,gsn(max_block_it=1),gsn(max_block_it=1),max_it=1)", problem, oracle::vec(x0), stats);
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = x[i] - x_star[i];
  EXPECT_LE(oracle::max_abs_diff(e, expected), 1e-12);
}

TEST(LeftPreconditioning, RichardsonStepReproducesResidual) {
  auto problem = mildly_nonlinear();
  SolveStats stats;
  const Vector x{0.3, -0.7};
  const Vector rl = left_precond_residual(problem, parse_solver("nrich(ls=basic,damping=1)"), x, stats);
  const Vector r = evaluate_residual(*problem, x, stats);
  EXPECT_NEAR(rl[0], r[0], 1e-15);
  EXPECT_NEAR(rl[1], r[1], 1e-15);
  EXPECT_EQ(stats.npc_applies, 1);
}

TEST(LeftPreconditioning, ExactSolverGivesDistanceToSolution) {
  const oracle::Dense a{{3.0, 1.0}, {1.0, 2.0}};
  auto problem = affine(a, {1.0, 1.0});
  const auto x_star = oracle::solve(a, {1.0, 1.0});
  SolveStats stats;
  const Vector x{2.0, 3.0};
  const Vector rl = left_precond_residual(problem, parse_solver("newton(lpc=lu)"), x, stats);
  EXPECT_NEAR(rl[0], 2.0 - x_star[0], 1e-13);
  EXPECT_NEAR(rl[1], 3.0 - x_star[1], 1e-13);

  Vector y = x;
  const auto out = make_solver(parse_solver("nrich(lp=newton(lpc=lu),ls=basic)"), problem)->solve(y, stats);
  EXPECT_TRUE(is_converged(out.reason));
  EXPECT_EQ(out.iterations, 1);
}

TEST(LeftPreconditioning, RasOnMatchingBlocksIsExact) {
  oracle::Dense a = oracle::zeros(6, 6);
  std::mt19937 rng(12);
  const auto top = oracle::random_diag_dominant(rng, 3, 1.0);
  const auto bottom = oracle::random_diag_dominant(rng, 3, 1.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      a[i][j] = top[i][j];
      a[i + 3][j + 3] = bottom[i][j];
    }
  }
  const auto b = oracle::random_vector(rng, 6);
  auto problem = affine(a, b);
  const auto x_star = oracle::solve(a, b);
  const auto x = oracle::random_vector(rng, 6);
  SolveStats stats;
  const Vector rl = left_precond_residual(problem, parse_solver("ras(px=2,py=1,overlap=0)"), oracle::vec(x), stats);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(rl[i], x[i] - x_star[i], 1e-12);
}

TEST(RightPreconditioning, NewtonEqualsMultiplicativeComposite) {
  PLaplacianParams params;
  params.nx = params.ny = 9;
  auto problem = std::make_shared<PLaplacianProblem>(params);
  SolveStats s1, s2;
  const Vector x0 = problem->initial_guess();
  const Vector a = solve_with("newton(rp=gsn,lpc=lu,max_it=3)", problem, x0, s1);
  const Vector b = solve_with("composite(type=multiplicative,gsn,newton(lpc=lu),max_it=3)", problem, x0, s2);
  EXPECT_LE(norm_inf(difference(a, b)), 1e-12 * std::max(1.0, norm_inf(a)));
}

TEST(RightPreconditioning, CountsInnerApplications) {
  PLaplacianParams params;
  params.nx = params.ny = 9;
  auto problem = std::make_shared<PLaplacianProblem>(params);
  SolveStats stats;
  Vector x = problem->initial_guess();
  const auto out = make_solver(parse_solver("nrich(rp=gsn,ls=cp,max_it=3)"), problem)->solve(x, stats);
  EXPECT_EQ(out.iterations, 3);
  EXPECT_EQ(stats.npc_applies, 3);
}

TEST(RightPreconditioning, UnsupportedOuterIsRejected) {
  EXPECT_NO_THROW(right_precond_wrap(parse_solver("anderson"), parse_solver("fas")));
  EXPECT_THROW(right_precond_wrap(parse_solver("ncg"), parse_solver("fas")), ConfigError);
  EXPECT_THROW(parse_solver("ncg(rp=fas)"), ConfigError);
}
