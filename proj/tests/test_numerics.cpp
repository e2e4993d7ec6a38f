#include <cmath>
#include <limits>

#include "doctest.h"
#include "sysid/errors.hpp"
#include "sysid/numerics.hpp"
#include "test_support.hpp"

using namespace sysid;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("svd_rank on constructed ranks") {
  Rng rng(301);
  for (int n = 1; n <= 5; ++n) {
    for (int r = 0; r <= n; ++r) {
      Matrix m = Matrix::Zero(n, n);
      if (r > 0) {
        Matrix u = testsup::random_matrix(rng, n, r);
        Matrix v = testsup::random_matrix(rng, n, r);
        m = u * v.transpose();
      }
      CHECK(svd_rank(m) == r);
    }
  }
}

TEST_CASE("svd_rank ignores noise-level singular values") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-18;
  CHECK(svd_rank(m) == 1);
}

TEST_CASE("spectral_norm matches known values") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  CHECK(spectral_norm(d) == doctest::Approx(4.0));
  Matrix ones = Matrix::Ones(3, 3);
  CHECK(spectral_norm(ones) == doctest::Approx(3.0));
}

TEST_CASE("condition_number") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 8.0;
  d(1, 1) = 2.0;
  CHECK(condition_number(d) == doctest::Approx(4.0));
  d(1, 1) = 0.0;
  CHECK(std::isinf(condition_number(d)));
}

TEST_CASE("min_eigenvalue_sym") {
  Matrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  CHECK(min_eigenvalue_sym(m) == doctest::Approx(1.0));
}

TEST_CASE("lstsq solves consistent systems exactly") {
  Rng rng(302);
  for (int iter = 0; iter < 20; ++iter) {
    Matrix a = testsup::random_matrix(rng, 6, 3);
    Matrix x = testsup::random_matrix(rng, 3, 2);
    Matrix b = a * x;
    Matrix sol = lstsq(a, b);
    CHECK((sol - x).norm() < 1e-10);
  }
}

TEST_CASE("lstsq minimizes the residual in the inconsistent case") {
  Rng rng(303);
  Matrix a = testsup::random_matrix(rng, 8, 3);
  Matrix b = testsup::random_matrix(rng, 8, 1);
  Matrix sol = lstsq(a, b);
  // Normal equations must hold at the minimizer.
  CHECK((a.transpose() * (a * sol - b)).norm() < 1e-10);
}

TEST_CASE("inverse_sqrt_spd inverts the square") {
  Rng rng(304);
  Matrix g = testsup::random_matrix(rng, 4, 4);
  Matrix spd = g * g.transpose() + 0.5 * Matrix::Identity(4, 4);
  Matrix m = inverse_sqrt_spd(spd, "test");
  CHECK((m * spd * m - Matrix::Identity(4, 4)).norm() < 1e-10);
  CHECK((m - m.transpose()).norm() < 1e-12);
}

TEST_CASE("inverse_sqrt_spd rejects degenerate matrices") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-16;
  CHECK_THROWS_AS(inverse_sqrt_spd(m, "test"), NumericalError);
}

TEST_SUITE_END();
