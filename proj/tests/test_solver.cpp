// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "shrinklp/rng.hpp"
#include "shrinklp/solver.hpp"
#include "support/oracles.hpp"

using namespace shrinklp;
using shrinklp::testing::robust_grid_oracle;
using shrinklp::testing::robust_max_violation;
using shrinklp::testing::vertex_enum_lp_max;

namespace {

ConstrainedProblem one_dim(double coeff, double rhs, double cost,
                           double gamma = 0.0) {
  return {DenseMatrix(1, 1, {coeff}), {rhs}, {cost}, gamma};
}

DenseMatrix random_positive(int rows, int cols, RngStream& rng) {
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(4.0, 6.0);
  return m;
}

}  // namespace

TEST_CASE("solve_lp one-dimensional cases") {
  Solution up = solve_lp(one_dim(1.0, 5.0, 1.0));
  REQUIRE(up.status == SolveStatus::kOptimal);
  CHECK(up.x[0] == doctest::Approx(5.0));
  CHECK(up.objective == doctest::Approx(5.0));

  Solution infeasible = solve_lp(one_dim(1.0, -1.0, 1.0));
  CHECK(infeasible.status == SolveStatus::kInfeasible);

  Solution unbounded = solve_lp(one_dim(-1.0, 1.0, 1.0));
  CHECK(unbounded.status == SolveStatus::kUnbounded);
}

TEST_CASE("solve_lp 2-variable example matches vertex enumeration") {
  DenseMatrix a(2, 2, {1, 1, 1, 2});
  ConstrainedProblem problem{a, {1.0, 1.5}, {1.0, 1.0}, 0.0};
  Solution sol = solve_lp(problem);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(1.0));
  const auto oracle = vertex_enum_lp_max(a, problem.b, problem.cost);
  REQUIRE(oracle.has_value());
  CHECK(sol.objective == doctest::Approx(*oracle).epsilon(1e-9));
}

TEST_CASE("solve_lp handles negative rhs through phase 1") {
  // max -x subject to x >= 1 (written as -x <= -1) and x <= 3.
  DenseMatrix a(2, 1, {-1.0, 1.0});
  ConstrainedProblem problem{a, {-1.0, 3.0}, {-1.0}, 0.0};
  Solution sol = solve_lp(problem);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.objective == doctest::Approx(-1.0));
}

TEST_CASE("solve_lp agrees with exhaustive enumeration on random LPs") {
  RngStream rng(808, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
    const int p = 2 + static_cast<int>(rng.uniform(0.0, 4.0));
    DenseMatrix a(m, p);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < p; ++j) a(i, j) = rng.uniform(-2.0, 6.0);
    std::vector<double> b(m), c(p);
    // A few negative rhs rows exercise phase 1.
    for (double& v : b) v = rng.uniform(trial % 5 == 0 ? -2.0 : 0.5, 6.0);
    for (double& v : c) v = rng.uniform(0.5, 6.0);

    Solution sol = solve_lp({a, b, c, 0.0});
    const auto oracle = vertex_enum_lp_max(a, b, c);
    if (sol.status == SolveStatus::kOptimal) {
      REQUIRE(oracle.has_value());
      CHECK(sol.objective ==
            doctest::Approx(*oracle).epsilon(1e-7).scale(1.0));
    } else if (sol.status == SolveStatus::kInfeasible) {
      CHECK_FALSE(oracle.has_value());
    }
    // Unbounded cases cannot be certified by vertex enumeration; the
    // random mix above keeps them rare.
  }
}

TEST_CASE("solve_lp is deterministic") {
  RngStream rng(909, 2);
  DenseMatrix a = random_positive(12, 20, rng);
  std::vector<double> b(12), c(20);
  for (double& v : b) v = rng.uniform(4.0, 6.0);
  for (double& v : c) v = rng.uniform(4.0, 6.0);
  ConstrainedProblem problem{a, b, c, 0.0};
  Solution s1 = solve_lp(problem);
  Solution s2 = solve_lp(problem);
  REQUIRE(s1.status == SolveStatus::kOptimal);
  CHECK(s1.x == s2.x);  // bitwise
  CHECK(s1.objective == s2.objective);
  CHECK(s1.iterations == s2.iterations);
}

TEST_CASE("solve_lp rejects a robust problem") {
  CHECK_THROWS_AS(solve_lp(one_dim(1.0, 1.0, 1.0, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("robust_support_value closed forms and sampling bound") {
  CHECK(robust_support_value({1.0, 1.0}, {1.0, 1.0}, 1.0) ==
        doctest::Approx(2.0 + std::sqrt(2.0)));
  CHECK(robust_support_value({2.0, -1.0}, {0.5, 3.0}, 0.0) ==
        doctest::Approx(-2.0));

  RngStream rng(303, 4);
  std::vector<double> a(4), x(4);
  for (double& v : a) v = rng.uniform(-2.0, 4.0);
  for (double& v : x) v = rng.uniform(0.0, 3.0);
  const double gamma = 0.7;
  const double support = robust_support_value(a, x, gamma);
  double xnorm = 0.0;
  for (double v : x) xnorm += v * v;
  xnorm = std::sqrt(xnorm);

  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<double> delta(4);
    double dnorm = 0.0;
    for (double& v : delta) {
      v = rng.normal();
      dnorm += v * v;
    }
    dnorm = std::sqrt(dnorm);
    const double radius = gamma * std::cbrt(rng.uniform01());
    double value = 0.0;
    for (int j = 0; j < 4; ++j) {
      value += (a[j] + delta[j] / dnorm * radius) * x[j];
    }
    CHECK(value <= support + 1e-9);
  }
  // The maximizer delta = gamma * x / ||x|| attains the support value.
  double attained = 0.0;
  for (int j = 0; j < 4; ++j) attained += (a[j] + gamma * x[j] / xnorm) * x[j];
  CHECK(attained == doctest::Approx(support).epsilon(1e-12));
}

TEST_CASE("solve_robust one-dimensional case and conservatism") {
  Solution robust = solve_robust(one_dim(1.0, 4.0, 1.0, 1.0));
  REQUIRE(robust.status == SolveStatus::kOptimal);
  CHECK(robust.x[0] == doctest::Approx(2.0).epsilon(1e-7));

  CHECK_THROWS_AS(solve_robust(one_dim(1.0, 4.0, 1.0, 0.0)),
                  std::invalid_argument);
  Solution lp = solve_lp(one_dim(1.0, 4.0, 1.0, 0.0));
  CHECK(lp.x[0] == doctest::Approx(4.0));
  CHECK(robust.objective < lp.objective);
}

TEST_CASE("solve_robust matches the grid oracle on a small instance") {
  RngStream rng(505, 6);
  DenseMatrix a = random_positive(4, 3, rng);
  std::vector<double> b(4), c(3);
  for (double& v : b) v = rng.uniform(4.0, 6.0);
  for (double& v : c) v = rng.uniform(4.0, 6.0);
  const double gamma = 0.8;
  Solution sol = solve_robust({a, b, c, gamma});
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(robust_max_violation(a, b, gamma, sol.x) <= 1e-7);
  const double oracle = robust_grid_oracle(a, b, c, gamma);
  CHECK(sol.objective == doctest::Approx(oracle).epsilon(5e-3));
}

TEST_CASE("robust objective is non-increasing in gamma") {
  RngStream rng(606, 7);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix a = random_positive(20, 20, rng);
    std::vector<double> b(20), c(20);
    for (double& v : b) v = rng.uniform(4.0, 6.0);
    for (double& v : c) v = rng.uniform(4.0, 6.0);
    double previous = std::numeric_limits<double>::infinity();
    for (double gamma : {0.1, 0.5, 1.0}) {
      Solution sol = solve_robust({a, b, c, gamma});
      REQUIRE(sol.status == SolveStatus::kOptimal);
      // Cut soundness: the incumbent withstands the full ball on every row.
      CHECK(robust_max_violation(a, b, gamma, sol.x) <= 1e-7);
      CHECK(sol.objective <= previous + 1e-9);
      previous = sol.objective;
    }
  }
}

TEST_CASE("box uncertainty support equals the sampled maximum") {
  RngStream rng(707, 8);
  for (int instance = 0; instance < 3; ++instance) {
    std::vector<double> a(5), x(5);
    for (double& v : a) v = rng.uniform(0.0, 5.0);
    for (double& v : x) v = rng.uniform(0.0, 2.0);
    const double alpha = rng.uniform(0.2, 1.0);
    const double beta = rng.uniform(0.2, 1.0);
    // Closed form: max over |y| <= alpha, ||z||_inf <= beta of (y*a + z)'x.
    double closed = 0.0;
    for (int j = 0; j < 5; ++j) closed += (alpha * a[j] + beta) * x[j];

    double best = -1e300;
    for (int trial = 0; trial < 1000; ++trial) {
      const double y = rng.uniform(-alpha, alpha);
      double value = 0.0;
      for (int j = 0; j < 5; ++j) {
        value += (y * a[j] + rng.uniform(-beta, beta)) * x[j];
      }
      best = std::max(best, value);
      CHECK(value <= closed + 1e-9);
    }
    // The corner (alpha, beta*1) attains it.
    double corner = 0.0;
    for (int j = 0; j < 5; ++j) corner += (alpha * a[j] + beta) * x[j];
    CHECK(corner == doctest::Approx(closed).epsilon(1e-12));
    CHECK(best <= corner + 1e-9);
  }
}

TEST_CASE("debug dump writes problem and solution files") {
  namespace fs = std::filesystem;
  const std::string dir =
      (fs::temp_directory_path() / "shrinklp_dump").string();
  fs::remove_all(dir);
  SolverOptions options;
  options.debug_dump_dir = dir;
  options.debug_label = "tiny";
  Solution sol = solve_lp(one_dim(1.0, 5.0, 1.0), options);
  REQUIRE(sol.status == SolveStatus::kOptimal);
  CHECK(fs::exists(fs::path(dir) / "tiny_A.csv"));
  CHECK(fs::exists(fs::path(dir) / "tiny_b.csv"));
  CHECK(fs::exists(fs::path(dir) / "tiny_cost.csv"));
  CHECK(fs::exists(fs::path(dir) / "tiny_solution.json"));
  fs::remove_all(dir);
}

TEST_CASE("builders wrap their inputs and validate shapes") {
  for (auto [rows, cols] : {std::pair{1, 1}, {2, 3}, {5, 5}}) {
    RngStream rng(800 + rows, cols);
    DenseMatrix a = random_positive(rows, cols, rng);
    std::vector<double> b(rows, 5.0), c(cols, 1.0);
    ConstrainedProblem nominal = build_nominal(a, b, c);
    CHECK(nominal.a.data() == a.data());
    CHECK(nominal.b == b);
    CHECK(nominal.cost == c);
    CHECK(nominal.robust_radius == 0.0);
    ConstrainedProblem shrunk = build_shrinkage(a, b, c);
    CHECK(shrunk.a.data() == a.data());
    CHECK(shrunk.robust_radius == 0.0);
  }
  DenseMatrix a(2, 3);
  CHECK_THROWS_AS(build_nominal(a, {1.0}, {1.0, 1.0, 1.0}), DimensionError);
  CHECK_THROWS_AS(build_shrinkage(a, {1.0, 1.0}, {1.0}), DimensionError);
}
