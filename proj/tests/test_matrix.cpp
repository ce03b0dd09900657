// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "shrinklp/matrix.hpp"
#include "shrinklp/matrix_io.hpp"
#include "shrinklp/rng.hpp"

using namespace shrinklp;

namespace {

DenseMatrix random_matrix(int rows, int cols, RngStream& rng, double lo = -3.0,
                          double hi = 3.0) {
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

}  // namespace

TEST_CASE("frobenius_inner basic values") {
  DenseMatrix a(2, 2, {1, 2, 3, 4});
  CHECK(frobenius_inner(a, DenseMatrix::identity(2)) == doctest::Approx(5.0));
  CHECK(frobenius_inner(DenseMatrix::ones(2, 2), DenseMatrix::ones(2, 2)) ==
        doctest::Approx(4.0));
  DenseMatrix d1(2, 2, {1, 0, 0, 1});
  DenseMatrix d2(2, 2, {0, 1, 1, 0});
  CHECK(frobenius_inner(d1, d2) == doctest::Approx(0.0));
}

TEST_CASE("frobenius_inner rejects shape mismatch") {
  DenseMatrix a(2, 2);
  DenseMatrix b(2, 3);
  CHECK_THROWS_AS(frobenius_inner(a, b), DimensionError);
}

TEST_CASE("frobenius_norm_sq basic values") {
  CHECK(frobenius_norm_sq(DenseMatrix(3, 2)) == 0.0);
  CHECK(frobenius_norm_sq(DenseMatrix::ones(2, 3)) == doctest::Approx(6.0));
  DenseMatrix a(2, 2, {1, 2, 3, 4});
  CHECK(frobenius_norm_sq(a) == doctest::Approx(30.0));
}

TEST_CASE("inner product is symmetric and expands the norm") {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix a = random_matrix(4, 5, rng);
    DenseMatrix b = random_matrix(4, 5, rng);
    CHECK(frobenius_inner(a, b) == doctest::Approx(frobenius_inner(b, a)));
    const double lhs = frobenius_norm_sq(linear_combination(1.0, a, 1.0, b));
    const double rhs =
        frobenius_norm_sq(a) + 2.0 * frobenius_inner(a, b) + frobenius_norm_sq(b);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("Cauchy-Schwarz with equality exactly for proportional pairs") {
  RngStream rng(12, 0);
  DenseMatrix a = random_matrix(3, 4, rng);
  DenseMatrix b = random_matrix(3, 4, rng);
  const double lhs = frobenius_norm_sq(a) * frobenius_norm_sq(b);
  const double rhs = frobenius_inner(a, b);
  CHECK(lhs >= rhs * rhs);
  // Strict for a generic pair.
  CHECK(lhs > rhs * rhs * (1.0 + 1e-12));

  DenseMatrix prop = linear_combination(2.5, a, 0.0, a);
  const double lhs2 = frobenius_norm_sq(a) * frobenius_norm_sq(prop);
  const double rhs2 = frobenius_inner(a, prop);
  CHECK(lhs2 == doctest::Approx(rhs2 * rhs2).epsilon(1e-12));
}

TEST_CASE("construction validates shape and finiteness") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1, 2, 3}), DimensionError);
  CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::nan("")}), ConstructionError);
  CHECK_THROWS_AS(
      DenseMatrix(1, 2, {1.0, std::numeric_limits<double>::infinity()}),
      ConstructionError);
}

TEST_CASE("make_spd_root: scaled identity") {
  RngStream rng(1, 2);
  DenseMatrix r = make_spd_root(3, CovarianceSpec::identity_scaled(2.0), rng);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(r(i, j) == (i == j ? 2.0 : 0.0));
  // Sigma = R^2 = 4I, so tr(Sigma)/3 = 4.
  CHECK(frobenius_norm_sq(r) / 3.0 == doctest::Approx(4.0));
}

TEST_CASE("make_spd_root: diagonal range endpoints") {
  RngStream rng(1, 3);
  DenseMatrix r = make_spd_root(2, CovarianceSpec::diagonal(1.0, 3.0), rng);
  CHECK(r(0, 0) == doctest::Approx(1.0));
  CHECK(r(1, 1) == doctest::Approx(3.0));
  CHECK(r(0, 1) == 0.0);
  CHECK(frobenius_norm_sq(r) / 2.0 == doctest::Approx(5.0));
}

TEST_CASE("make_spd_root: dense root is symmetric positive definite") {
  RngStream rng(77, 5);
  DenseMatrix r =
      make_spd_root(50, CovarianceSpec::dense_well_conditioned(), rng);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) CHECK(r(i, j) == r(j, i));
  // Quadratic-form probes for random nonzero x: x'Rx > 0 (the root is
  // itself positive definite) and x'Sigma x = ||Rx||^2 > 0.
  RngStream probe(78, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(50);
    double xnorm = 0.0;
    for (double& v : x) {
      v = probe.normal();
      xnorm += v * v;
    }
    REQUIRE(xnorm > 0.0);
    double quad_root = 0.0;
    double quad_sigma = 0.0;
    for (int i = 0; i < 50; ++i) {
      double rx = 0.0;
      for (int j = 0; j < 50; ++j) rx += r(i, j) * x[j];
      quad_root += x[i] * rx;
      quad_sigma += rx * rx;
    }
    CHECK(quad_root > 0.0);
    CHECK(quad_sigma > 0.0);
  }
}

TEST_CASE("make_spd_root rejects non-positive specs") {
  RngStream rng(1, 4);
  CHECK_THROWS_AS(make_spd_root(3, CovarianceSpec::identity_scaled(0.0), rng),
                  ConstructionError);
  CHECK_THROWS_AS(make_spd_root(3, CovarianceSpec::diagonal(-1.0, 2.0), rng),
                  ConstructionError);
  CHECK_THROWS_AS(
      make_spd_root(0, CovarianceSpec::dense_well_conditioned(), rng),
      ConstructionError);
}

TEST_CASE("matmul agrees with the direct triple loop and threads") {
  RngStream rng(5, 1);
  DenseMatrix a = random_matrix(7, 9, rng);
  DenseMatrix b = random_matrix(9, 4, rng);
  DenseMatrix ab = matmul(a, b);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 4; ++j) {
      double want = 0.0;
      for (int k = 0; k < 9; ++k) want += a(i, k) * b(k, j);
      CHECK(ab(i, j) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  DenseMatrix big_a = random_matrix(300, 200, rng);
  DenseMatrix big_b = random_matrix(200, 300, rng);
  DenseMatrix serial = matmul(big_a, big_b, 1);
  DenseMatrix threaded = matmul(big_a, big_b, 4);
  CHECK(serial.data() == threaded.data());  // bitwise identical
}

TEST_CASE("matrix CSV round-trips exactly") {
  RngStream rng(123, 9);
  DenseMatrix m = random_matrix(6, 3, rng, -1e6, 1e6);
  m(0, 0) = 1.0 / 3.0;
  m(1, 2) = -2.5e-17;
  const std::string path =
      (std::filesystem::temp_directory_path() / "shrinklp_mat.csv").string();
  write_matrix_csv(m, path);
  DenseMatrix back = read_matrix_csv(path);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  CHECK(back.data() == m.data());
  std::remove(path.c_str());
}
