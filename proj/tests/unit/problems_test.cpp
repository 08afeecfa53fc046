#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlc/decomposition/subdomains.hpp"
#include "nlc/linalg/sparse_matrix.hpp"
#include "nlc/multilevel/hierarchy.hpp"
#include "nlc/problems/cavity.hpp"
#include "nlc/problems/linear.hpp"
#include "nlc/problems/plaplacian.hpp"
#include "oracles.hpp"

using namespace nlc;

namespace {

PLaplacianParams small_plap(double p = 5.0, std::size_t n = 9) {
  PLaplacianParams params;
  params.p = p;
  params.nx = params.ny = n;
  return params;
}

CavityParams small_cavity(double grashof = 5e4, std::size_t n = 9) {
  CavityParams params;
  params.grashof = grashof;
  params.nx = params.ny = n;
  return params;
}

Vector perturbed(const Vector& base, std::mt19937& rng, double amplitude) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  Vector x = base;
  for (auto& v : x) v += dist(rng);
  return x;
}

}  // namespace

TEST(PLaplacian, InitialGuessFormula) {
  PLaplacianProblem problem(PLaplacianParams{});
  const Vector u0 = problem.initial_guess();
  const Layout layout = problem.layout();
  // 65 nodes on [-1, 1]: node 32 is the origin and node 48 is 0.5.
  EXPECT_DOUBLE_EQ(u0[layout.index(32, 32)], 0.0);
  EXPECT_DOUBLE_EQ(u0[layout.index(48, 48)], 0.140625);
  EXPECT_DOUBLE_EQ(u0[layout.index(0, 17)], 0.0);
}

TEST(PLaplacian, ZeroStateWithoutSourceHasZeroResidual) {
  PLaplacianParams params = small_plap();
  params.source = 0.0;
  PLaplacianProblem problem(params);
  SolveStats stats;
  const Vector r = evaluate_residual(problem, Vector(problem.layout()), stats);
  EXPECT_EQ(norm_inf(r), 0.0);
}

TEST(PLaplacian, QuadraticCaseIsFivePointPoisson) {
  PLaplacianParams params = small_plap(2.0, 9);
  params.source = 0.3;
  PLaplacianProblem problem(params);
  const Layout layout = problem.layout();
  std::mt19937 rng(7);
  Vector u(layout);
  for (std::size_t j = 1; j + 1 < layout.ny; ++j) {
    for (std::size_t i = 1; i + 1 < layout.nx; ++i) u[layout.index(i, j)] = std::uniform_real_distribution<>(-1, 1)(rng);
  }
  SolveStats stats;
  const Vector r = evaluate_residual(problem, u, stats);
  const double area = problem.hx() * problem.hy();
  for (std::size_t j = 0; j < layout.ny; ++j) {
    for (std::size_t i = 0; i < layout.nx; ++i) {
      const std::size_t k = layout.index(i, j);
      if (layout.on_boundary(i, j)) {
        EXPECT_DOUBLE_EQ(r[k], u[k]);
        continue;
      }
      const double stencil = 4.0 * u[k] - u[layout.index(i - 1, j)] - u[layout.index(i + 1, j)] -
                             u[layout.index(i, j - 1)] - u[layout.index(i, j + 1)];
      EXPECT_NEAR(r[k], stencil - area * params.source, 1e-13) << i << "," << j;
    }
  }
}

TEST(PLaplacian, JacobianMatchesFiniteDifferencesAtInitialGuess) {
  PLaplacianProblem problem(small_plap(5.0, 17));
  const Vector u0 = problem.initial_guess();
  const auto analytic = oracle::to_dense(problem.jacobian(u0));
  EXPECT_LE(oracle::jacobian_mismatch(analytic, oracle::fd_jacobian(problem, u0)), 1e-4);
}

TEST(PLaplacian, JacobianMatchesFiniteDifferencesWithBratuTerm) {
  PLaplacianParams params = small_plap(3.0, 9);
  params.bratu_lambda = 0.5;
  PLaplacianProblem problem(params);
  std::mt19937 rng(11);
  const Vector x = perturbed(problem.initial_guess(), rng, 0.2);
  const auto analytic = oracle::to_dense(problem.jacobian(x));
  EXPECT_LE(oracle::jacobian_mismatch(analytic, oracle::fd_jacobian(problem, x)), 1e-4);
}

TEST(PLaplacian, JacobianIsSymmetric) {
  PLaplacianProblem problem(small_plap(5.0, 9));
  std::mt19937 rng(3);
  const Vector x = perturbed(problem.initial_guess(), rng, 0.3);
  const SparseMatrix jac = problem.jacobian(x);
  EXPECT_LE(jac.asymmetry(), 1e-12);
}

TEST(PLaplacian, PointBlocksAgreeWithAssembledOperator) {
  PLaplacianProblem problem(small_plap(5.0, 9));
  std::mt19937 rng(5);
  const Vector x = perturbed(problem.initial_guess(), rng, 0.2);
  Vector f;
  problem.apply(x, f);
  const auto dense = oracle::to_dense(problem.jacobian(x));
  const PointBlockOps* ops = problem.point_blocks();
  ASSERT_NE(ops, nullptr);
  for (std::size_t node = 0; node < x.size(); ++node) {
    double value = 0.0, diag = 0.0;
    ops->residual(x, node, &value);
    ops->jacobian(x, node, &diag);
    EXPECT_NEAR(value, f[node], 1e-14);
    EXPECT_NEAR(diag, dense[node][node], 1e-12);
  }
}

TEST(PLaplacian, RejectsBadParameters) {
  PLaplacianParams params = small_plap();
  params.p = 0.5;
  EXPECT_THROW(PLaplacianProblem{params}, ConfigError);
  params = small_plap();
  params.nx = 2;
  EXPECT_THROW(PLaplacianProblem{params}, ConfigError);
}

TEST(Cavity, TrivialStateOnlyTemperatureWallIsNonzero) {
  CavityParams params = small_cavity(0.0);
  params.lid_velocity = 0.0;
  CavityProblem problem(params);
  const Layout layout = problem.layout();
  SolveStats stats;
  const Vector r = evaluate_residual(problem, Vector(layout), stats);
  for (std::size_t j = 0; j < layout.ny; ++j) {
    for (std::size_t i = 0; i < layout.nx; ++i) {
      for (std::size_t field = 0; field < 4; ++field) {
        const double value = r[layout.index(i, j, field)];
        if (field == CavityProblem::TEMP && i + 1 == layout.nx) {
          EXPECT_NE(value, 0.0);
        } else {
          EXPECT_EQ(value, 0.0) << i << "," << j << " field " << field;
        }
      }
    }
  }
}

TEST(Cavity, InitialGuessIsConductionProfile) {
  CavityProblem problem(small_cavity());
  const Layout layout = problem.layout();
  const Vector x0 = problem.initial_guess();
  for (std::size_t j = 0; j < layout.ny; ++j) {
    for (std::size_t i = 0; i < layout.nx; ++i) {
      EXPECT_EQ(x0[layout.index(i, j, CavityProblem::U)], 0.0);
      EXPECT_EQ(x0[layout.index(i, j, CavityProblem::OMEGA)], 0.0);
      EXPECT_DOUBLE_EQ(x0[layout.index(i, j, CavityProblem::TEMP)], static_cast<double>(i) / (layout.nx - 1));
    }
  }
}

TEST(Cavity, InitialResidualNormOnDefaultGrid) {
  CavityParams params;
  params.grashof = 5e4;
  CavityProblem problem(params);
  SolveStats stats;
  const double norm = norm2(evaluate_residual(problem, problem.initial_guess(), stats));
  EXPECT_NEAR(norm, 1228.95, 0.01 * 1228.95);
}

TEST(Cavity, JacobianMatchesFiniteDifferencesAtRandomStates) {
  CavityProblem problem(small_cavity(5e4, 7));
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    const Vector x = perturbed(problem.initial_guess(), rng, 1.0);
    const auto analytic = oracle::to_dense(problem.jacobian(x));
    EXPECT_LE(oracle::jacobian_mismatch(analytic, oracle::fd_jacobian(problem, x)), 1e-4) << "trial " << trial;
  }
}

TEST(Cavity, TemperatureDecouplesWithoutBuoyancy) {
  CavityProblem problem(small_cavity(0.0));
  const Layout layout = problem.layout();
  std::mt19937 rng(9);
  const Vector x = perturbed(problem.initial_guess(), rng, 0.5);
  Vector y = x;
  for (std::size_t node = 0; node < layout.nodes(); ++node) y[node * 4 + CavityProblem::TEMP] += 0.25;
  Vector fx, fy;
  problem.apply(x, fx);
  problem.apply(y, fy);
  for (std::size_t node = 0; node < layout.nodes(); ++node) {
    for (std::size_t field : {CavityProblem::U, CavityProblem::V, CavityProblem::OMEGA}) {
      EXPECT_EQ(fx[node * 4 + field], fy[node * 4 + field]);
    }
  }
}

TEST(Cavity, PointBlocksHaveFourComponents) {
  CavityProblem problem(small_cavity());
  const PointBlockOps* ops = problem.point_blocks();
  ASSERT_NE(ops, nullptr);
  EXPECT_EQ(ops->block_size, 4u);
  EXPECT_EQ(problem.layout().nodes(), 81u);
  std::mt19937 rng(1);
  const Vector x = perturbed(problem.initial_guess(), rng, 0.5);
  Vector f;
  problem.apply(x, f);
  const std::size_t node = problem.layout().index(4, 3) / 4;
  double block[4];
  ops->residual(x, node, block);
  for (std::size_t c = 0; c < 4; ++c) EXPECT_NEAR(block[c], f[node * 4 + c], 1e-12);
}

TEST(Cavity, CoarsensByRediscretization) {
  CavityProblem problem(small_cavity(5e4, 9));
  ASSERT_TRUE(problem.coarsenable());
  auto coarse = problem.coarsen();
  EXPECT_EQ(coarse->layout().nx, 5u);
  EXPECT_EQ(coarse->layout().dof, 4u);
}

TEST(Poisson1D, TridiagonalMatrixAndRhs) {
  Poisson1DProblem problem(5);
  const auto dense = oracle::to_dense(problem.jacobian(Vector(5)));
  EXPECT_EQ(dense[0][0], 1.0);
  EXPECT_EQ(dense[2][1], -4.0);
  EXPECT_EQ(dense[2][2], 8.0);
  EXPECT_EQ(poisson1d_matrix(3).rows(), 3u);
}

TEST(Decompositions, SubdomainBoxesOn65Grid) {
  SubdomainDecomposition dd(Layout{65, 65, 1}, 2, 2, 6);
  ASSERT_EQ(dd.size(), 4u);
  for (std::size_t b = 0; b < dd.size(); ++b) {
    EXPECT_LE(dd[b].overlap.width(), 39u);
    EXPECT_LE(dd[b].overlap.height(), 39u);
    EXPECT_EQ(dd[b].dofs.size(), dd[b].overlap.width() * dd[b].overlap.height());
  }
}

TEST(Decompositions, HierarchyChainFrom65Grid) {
  auto problem = std::make_shared<PLaplacianProblem>(PLaplacianParams{});
  const GridHierarchy hierarchy = GridHierarchy::build(problem, 5);
  ASSERT_EQ(hierarchy.size(), 5u);
  const std::size_t expected[] = {65, 33, 17, 9, 5};
  for (std::size_t l = 0; l < 5; ++l) EXPECT_EQ(hierarchy.layout(l).nx, expected[l]);
}
