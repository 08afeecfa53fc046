#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlc/cli/spec_parser.hpp"
#include "nlc/composition/preconditioning.hpp"
#include "nlc/decomposition/aspin.hpp"
#include "nlc/decomposition/nasm.hpp"
#include "nlc/linalg/sparse_matrix.hpp"
#include "nlc/problems/linear.hpp"
#include "nlc/problems/plaplacian.hpp"
#include "nlc/solvers/anderson.hpp"
#include "nlc/solvers/newton.hpp"
#include "nlc/solvers/qn.hpp"
#include "nlc/solvers/solver.hpp"
#include "oracles.hpp"

using namespace nlc;

namespace {

/// Affine problem A x - b from dense data.
std::shared_ptr<LinearProblem> affine(const oracle::Dense& a, const std::vector<double>& b) {
  return std::make_shared<LinearProblem>(oracle::sparse(a), oracle::vec(b));
}

SolveOutcome run(const std::string& spec, ProblemPtr problem, Vector& x, SolveStats& stats) {
  auto solver = make_solver(parse_solver(spec), std::move(problem));
  return solver->solve(x, stats);
}

}  // namespace

TEST(Nrich, AffineScalarConvergesInOneIteration) {
  auto problem = affine({{1.0}}, {1.0});
  Vector x{0.0};
  SolveStats stats;
  const auto out = run("nrich(ls=l2)", problem, x, stats);
  EXPECT_TRUE(is_converged(out.reason));
  EXPECT_EQ(out.iterations, 1);
  EXPECT_NEAR(x[0], 1.0, 1e-12);
}

TEST(Nrich, ExactSearchMatchesSteepestDescent) {
  // For a gradient system r = A x - b the cp search is the exact energy line search, so the
  // iterates are x <- x - (r^T r / r^T A r) r.
  const oracle::Dense a{{3.0, 1.0}, {1.0, 2.0}};
  const std::vector<double> b{1.0, -1.0};
  auto problem = affine(a, b);
  std::vector<double> expected{2.0, 1.0};
  Vector x = oracle::vec(expected);
  for (int it = 1; it <= 3; ++it) {
    std::vector<double> r = oracle::matvec(a, expected);
    for (std::size_t i = 0; i < 2; ++i) r[i] -= b[i];
    const double lambda = oracle::dot(r, r) / oracle::dot(r, oracle::matvec(a, r));
    for (std::size_t i = 0; i < 2; ++i) expected[i] -= lambda * r[i];

    SolveStats stats;
    run("nrich(ls=cp,max_it=1)", problem, x, stats);
    EXPECT_NEAR(x[0], expected[0], 1e-13) << "iteration " << it;
    EXPECT_NEAR(x[1], expected[1], 1e-13) << "iteration " << it;
  }
}

TEST(Anderson, FirstIterationIsTrialStep) {
  auto problem = std::make_shared<FunctionProblem>(Layout::flat(2), [](const Vector& x, Vector& f) {
    f = Vector{x[0] * x[0] - 1.0, std::sin(x[1])};
  });
  Vector x{2.0, 0.5};
  const Vector x0 = x;
  SolveStats stats;
  const Vector r0 = evaluate_residual(*problem, x0, stats);
  run("anderson(m=1,max_it=1)", problem, x, stats);
  EXPECT_DOUBLE_EQ(x[0], x0[0] - r0[0]);
  EXPECT_DOUBLE_EQ(x[1], x0[1] - r0[1]);
}

TEST(Anderson, DiagonalSystemWithFullHistory) {
  auto problem = affine({{1.0, 0.0}, {0.0, 2.0}}, {1.0, 2.0});
  Vector x{0.3, -0.4};
  SolveStats stats;
  const auto out = run("anderson(m=3,rtol=1e-12)", problem, x, stats);
  EXPECT_TRUE(is_converged(out.reason));
  EXPECT_LE(out.iterations, 3);
  EXPECT_NEAR(x[0], 1.0, 1e-10);
  EXPECT_NEAR(x[1], 1.0, 1e-10);
}

TEST(AndersonMixer, WeightsMatchNormalEquations) {
  std::mt19937 rng(17);
  for (std::size_t m = 1; m <= 3; ++m) {
    AndersonMixer mixer(m);
    std::vector<std::vector<double>> history;
    for (std::size_t k = 0; k < m; ++k) {
      history.push_back(oracle::random_vector(rng, 6));
      mixer.push(oracle::vec(oracle::random_vector(rng, 6)), oracle::vec(history.back()));
    }
    const auto r_trial = oracle::random_vector(rng, 6);
    const auto mix = mixer.mix(oracle::vec(oracle::random_vector(rng, 6)), oracle::vec(r_trial));
    const auto expected = oracle::anderson_weights_normal(history, r_trial);
    ASSERT_EQ(mix.weights.size(), m);
    for (std::size_t k = 0; k < m; ++k) EXPECT_NEAR(mix.weights[k], expected[k], 1e-8);
  }
}

TEST(AndersonMixer, EmptyHistoryReturnsTrial) {
  AndersonMixer mixer(2);
  const auto mix = mixer.mix(Vector{1.0, 2.0}, Vector{0.5, 0.5});
  EXPECT_EQ(mix.x.values(), (std::vector<double>{1.0, 2.0}));
  EXPECT_TRUE(mix.weights.empty());
}

TEST(Newton, AffineResidualOneIteration) {
  auto problem = affine({{4.0, 1.0, 0.0}, {1.0, 4.0, 1.0}, {0.0, 1.0, 4.0}}, {1.0, 2.0, 3.0});
  Vector x(3);
  SolveStats stats;
  const auto out = run("newton(lpc=lu)", problem, x, stats);
  EXPECT_TRUE(is_converged(out.reason));
  EXPECT_EQ(out.iterations, 1);
  EXPECT_EQ(stats.jac_evals, 1);
}

TEST(Newton, ScalarHandStep) {
  auto problem = std::make_shared<FunctionProblem>(
      Layout::flat(1), [](const Vector& x, Vector& f) { f = Vector{x[0] * x[0]}; },
      [](const Vector& x) { return SparseMatrix::from_dense(1, {2.0 * x[0]}); });
  problem->set_rhs(Vector{4.0});
  Vector x{1.0};
  SolveStats stats;
  run("newton(lpc=lu,ls=none,max_it=1)", problem, x, stats);
  EXPECT_DOUBLE_EQ(x[0], 2.5);
}

TEST(Newton, ConvergesQuadraticallyOnPLaplacian) {
  PLaplacianParams params;
  params.p = 3.0;
  params.nx = params.ny = 9;
  auto problem = std::make_shared<PLaplacianProblem>(params);
  Vector x = problem->initial_guess();
  SolveStats stats;
  const auto out = run("newton(lpc=lu,rtol=1e-10)", problem, x, stats);
  EXPECT_TRUE(is_converged(out.reason));
  EXPECT_LE(out.iterations, 12);
}

TEST(Aspin, SingleSubdomainConvergesInOneIterationOnAffineProblem) {
  PLaplacianParams params;
  params.p = 2.0;
  params.nx = params.ny = 9;
  auto problem = std::make_shared<PLaplacianProblem>(params);
  Vector x = problem->initial_guess();
  SolveStats stats;
  const auto out = run("newton(lp=ras(px=1,py=1),rtol=1e-10)", problem, x, stats);
  EXPECT_TRUE(is_converged(out.reason));
  EXPECT_EQ(out.iterations, 1);
}

TEST(Aspin, MatchingBlocksGiveIdentityOperator) {
  // Two decoupled 3x3 blocks on a 6-node line; subdomains match the blocks exactly.
  oracle::Dense a = oracle::zeros(6, 6);
  std::mt19937 rng(4);
  const auto block = oracle::random_diag_dominant(rng, 3, 1.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      a[i][j] = block[i][j];
      a[i + 3][j + 3] = block[j][i];
    }
  }
  auto problem = affine(a, oracle::random_vector(rng, 6));
  SolverNode node = parse_solver("ras(px=2,py=1,overlap=0)");
  NasmSolver nasm(node, problem, true, SchwarzVariant::ras);
  nasm.set_cache_factors(true);
  SolveStats stats;
  nasm.apply_once(Vector(6), stats);
  const LinearOperator op = aspin_operator(nasm);
  const auto v = oracle::random_vector(rng, 6);
  Vector w(6);
  op(oracle::vec(v), w);
  EXPECT_LE(oracle::max_abs_diff(w.values(), v), 1e-12);
}

TEST(TwoLoop, EmptyHistoryReturnsGradient) {
  QNState state;
  const Vector g{1.0, -2.0, 3.0};
  EXPECT_EQ(lbfgs_two_loop(state, g).values(), g.values());
}

TEST(TwoLoop, OnePairMatchesDenseUpdate) {
  QNState state;
  const std::vector<double> s{0.5, -0.25}, y{1.0, 0.2};
  ASSERT_TRUE(state.push(oracle::vec(s), oracle::vec(y)));
  const std::vector<double> g{0.3, 0.7};
  const double gamma = oracle::dot(s, y) / oracle::dot(y, y);
  const auto h = oracle::dense_inverse_bfgs({s}, {y}, gamma);
  const Vector kg = lbfgs_two_loop(state, oracle::vec(g));
  EXPECT_LE(oracle::max_abs_diff(kg.values(), oracle::matvec(h, g)), 1e-14);
}

TEST(TwoLoop, SecantProperty) {
  QNState state;
  const std::vector<double> s{1.0, 2.0, -1.0}, y{0.5, 1.0, 0.25};
  state.push(oracle::vec(s), oracle::vec(y));
  const Vector ky = lbfgs_two_loop(state, oracle::vec(y), false);
  EXPECT_LE(oracle::max_abs_diff(ky.values(), s), 1e-14);
}

TEST(TwoLoop, SkipsPairsWithoutCurvature) {
  QNState state;
  EXPECT_FALSE(state.push(Vector{1.0, 0.0}, Vector{0.0, 1.0}));
  EXPECT_EQ(state.size(), 0u);
}

TEST(Qn, SolvesSymmetricQuadratic) {
  auto problem = affine({{3.0, 1.0, 0.0}, {1.0, 3.0, 1.0}, {0.0, 1.0, 3.0}}, {1.0, 0.0, -1.0});
  Vector x(3);
  SolveStats stats;
  const auto out = run("qn(rtol=1e-10)", problem, x, stats);
  EXPECT_TRUE(is_converged(out.reason));
}

TEST(Qn, RequiresSymmetricJacobian) {
  auto problem = affine({{3.0, 1.0}, {0.0, 3.0}}, {1.0, 0.0});
  EXPECT_THROW(make_solver(parse_solver("qn"), problem), ConfigError);
  EXPECT_NO_THROW(make_solver(parse_solver("qn(allow_unsym=1)"), problem));
}

TEST(Ncg, QuadraticTerminatesInTwoIterations) {
  auto problem = affine({{4.0, 1.0}, {1.0, 2.0}}, {1.0, 3.0});
  Vector x{-1.0, 2.0};
  SolveStats stats;
  const auto out = run("ncg(rtol=1e-10)", problem, x, stats);
  EXPECT_TRUE(is_converged(out.reason));
  EXPECT_LE(out.iterations, 2);
}

TEST(Ncg, FirstDirectionIsSteepestDescent) {
  // On a gradient system the first cp step is the exact energy minimizer along -r.
  const oracle::Dense a{{4.0, 1.0}, {1.0, 2.0}};
  auto problem = affine(a, {1.0, 3.0});
  Vector x{-1.0, 2.0};
  std::vector<double> r = oracle::matvec(a, {-1.0, 2.0});
  r[0] -= 1.0;
  r[1] -= 3.0;
  const double lambda = oracle::dot(r, r) / oracle::dot(r, oracle::matvec(a, r));
  SolveStats stats;
  run("ncg(max_it=1)", problem, x, stats);
  EXPECT_NEAR(x[0], -1.0 - lambda * r[0], 1e-13);
  EXPECT_NEAR(x[1], 2.0 - lambda * r[1], 1e-13);
}

TEST(Ncg, RightPreconditioningIsRejected) {
  EXPECT_THROW(right_precond_wrap(parse_solver("ncg"), parse_solver("nrich")), ConfigError);
}
