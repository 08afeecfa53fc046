#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlc/cli/spec_parser.hpp"
#include "nlc/decomposition/gsn.hpp"
#include "nlc/linalg/smoothers.hpp"
#include "nlc/multilevel/fas.hpp"
#include "nlc/multilevel/hierarchy.hpp"
#include "nlc/multilevel/mg.hpp"
#include "nlc/multilevel/transfer.hpp"
#include "nlc/problems/linear.hpp"
#include "nlc/problems/plaplacian.hpp"
#include "nlc/solvers/solver.hpp"
#include "oracles.hpp"

using namespace nlc;

namespace {

std::shared_ptr<PLaplacianProblem> plap(std::size_t n, double p = 5.0) {
  PLaplacianParams params;
  params.p = p;
  params.nx = params.ny = n;
  return std::make_shared<PLaplacianProblem>(params);
}

}  // namespace

TEST(Transfer, InjectConstant) {
  const Layout fine{9, 9, 1};
  const Vector c = inject(Vector(fine, 3.0), coarse_layout(fine));
  EXPECT_EQ(c.size(), 25u);
  for (double v : c) EXPECT_EQ(v, 3.0);
}

TEST(Transfer, ProlongConstant) {
  const Layout fine{9, 5, 2};
  const Vector f = prolong(Vector(coarse_layout(fine), -1.5), fine);
  EXPECT_EQ(f.size(), fine.size());
  for (double v : f) EXPECT_DOUBLE_EQ(v, -1.5);
}

TEST(Transfer, FullWeightingOfHat) {
  const Layout fine = Layout::flat(9);
  Vector hat(fine);
  hat[4] = 1.0;
  const Vector c = restrict_full_weighting(hat, coarse_layout(fine));
  EXPECT_DOUBLE_EQ(c[2], 0.5);
  EXPECT_DOUBLE_EQ(c[1], 0.0);
  Vector neighbour(fine);
  neighbour[3] = 1.0;
  EXPECT_DOUBLE_EQ(restrict_full_weighting(neighbour, coarse_layout(fine))[2], 0.25);
}

TEST(Transfer, FullWeightingPreservesConstantsIn2D) {
  const Layout fine{9, 9, 1};
  const Vector c = restrict_full_weighting(Vector(fine, 2.0), coarse_layout(fine));
  for (double v : c) EXPECT_DOUBLE_EQ(v, 2.0);
}

TEST(Transfer, CoarsenabilityRules) {
  EXPECT_TRUE(can_coarsen(Layout{5, 5, 1}));
  EXPECT_FALSE(can_coarsen(Layout{6, 6, 1}));
  EXPECT_FALSE(can_coarsen(Layout{3, 3, 1}));
  EXPECT_EQ(coarse_extent(65), 33u);
}

TEST(Hierarchy, SizesFromLargestGrid) {
  const GridHierarchy h = GridHierarchy::build(plap(257), 6);
  const std::size_t expected[] = {257, 129, 65, 33, 17, 9};
  ASSERT_EQ(h.size(), 6u);
  for (std::size_t l = 0; l < 6; ++l) EXPECT_EQ(h.layout(l).nx, expected[l]);
}

TEST(Hierarchy, SingleLevel) { EXPECT_EQ(GridHierarchy::build(plap(5), 1).size(), 1u); }

TEST(Hierarchy, NonCoarsenableSizeIsRejected) {
  EXPECT_THROW(GridHierarchy::build(plap(6), 2), ConfigError);
  EXPECT_THROW(GridHierarchy::build(plap(9), 5), ConfigError);
}

TEST(Hierarchy, TransfersOnlyBetweenAdjacentLevels) {
  const GridHierarchy h = GridHierarchy::build(plap(17), 3);
  EXPECT_THROW(h.transfer(GridHierarchy::Transfer::inject, Vector(h.layout(0)), 0, 2), std::invalid_argument);
  EXPECT_EQ(h.transfer(GridHierarchy::Transfer::prolong, Vector(h.layout(1)), 1, 0).size(), 17u * 17u);
}

TEST(Fas, ExactSolutionIsFixedPoint) {
  auto problem = plap(17);
  Vector x = problem->initial_guess();
  SolveStats stats;
  make_solver(parse_solver("newton(lpc=lu,rtol=1e-14,atol=1e-15,max_it=50)"), problem)->solve(x, stats);
  const GridHierarchy h = GridHierarchy::build(problem, 3);
  Vector y = x;
  fas_vcycle(h, 0, problem, y, default_fas_smoother(), default_fas_coarse(), stats);
  EXPECT_LE(norm2(difference(y, x)), 1e-12 * norm2(x));
}

TEST(Fas, SingleLevelIsTwoSmoothings) {
  auto problem = plap(9);
  const GridHierarchy h = GridHierarchy::build(problem, 1);
  Vector x = problem->initial_guess();
  Vector y = x;
  SolveStats stats;
  fas_vcycle(h, 0, problem, x, default_fas_smoother(), default_fas_coarse(), stats);
  gsn_sweep(*problem, y, GsnConfig{}, stats);
  gsn_sweep(*problem, y, GsnConfig{}, stats);
  EXPECT_EQ(x.values(), y.values());
}

TEST(Fas, ConvergesOnPLaplacian) {
  auto problem = plap(33, 3.0);
  Vector x = problem->initial_guess();
  SolveStats stats;
  const auto out =
      make_solver(parse_solver("fas(levels=3,smoother=gsn(sweeps=2),rtol=1e-8,max_it=60)"), problem)->solve(x, stats);
  EXPECT_TRUE(is_converged(out.reason)) << to_string(out.reason);
}

TEST(LinearMg, PoissonContraction) {
  std::vector<SparseMatrix> ops;
  std::vector<Layout> layouts;
  for (std::size_t n : {33u, 17u, 9u}) {
    ops.push_back(Poisson1DProblem(n).jacobian(Vector(n)));
    layouts.push_back(Layout::flat(n));
  }
  LinearMG mg(ops, layouts, MgSmoother::gs, 1.0);
  std::mt19937 rng(13);
  const Vector b(33);
  Vector x = oracle::vec(oracle::random_vector(rng, 33));
  double prev = norm2(x);
  double worst = 0.0;
  for (int cycle = 0; cycle < 10; ++cycle) {
    mg.vcycle(b, x);
    const double now = norm2(x);
    worst = std::max(worst, now / prev);
    prev = now;
  }
  EXPECT_LE(worst, 0.2);
}

TEST(LinearMg, IdentityExactInOneCycle) {
  std::vector<SparseMatrix> ops{SparseMatrix::identity(9), SparseMatrix::identity(5)};
  std::vector<Layout> layouts{Layout::flat(9), Layout::flat(5)};
  LinearMG mg(ops, layouts, MgSmoother::sor, 1.0);
  const Vector b = oracle::vec({1, 2, 3, 4, 5, 6, 7, 8, 9});
  Vector x(9);
  mg.vcycle(b, x);
  EXPECT_LE(norm_inf(difference(x, b)), 1e-15);
}

TEST(LinearMg, SingleLevelIsSmoothing) {
  const SparseMatrix a = poisson1d_matrix(9);
  LinearMG mg({a}, {Layout::flat(9)}, MgSmoother::gs, 1.0);
  std::mt19937 rng(2);
  const Vector b = oracle::vec(oracle::random_vector(rng, 9));
  Vector x(9), y(9);
  mg.vcycle(b, x);
  sor_sweep(a, b, y, 1.0, 2);
  EXPECT_LE(norm_inf(difference(x, y)), 1e-15);
}
