#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "matrix_core.hpp"
#include "test_util.hpp"

using namespace pspca;
using testutil::as_centered;
using testutil::oracle_eigen;
using testutil::random_matrix;
using testutil::random_spd;

TEST_CASE("center subtracts column means") {
  Matrix raw(2, 1);
  raw << 1, 3;
  const CenteredData cd = center(raw, false);
  CHECK(cd.x(0, 0) == -1.0);
  CHECK(cd.x(1, 0) == 1.0);
  CHECK(cd.column_means[0] == 2.0);
  CHECK(cd.scale_factors[0] == 1.0);
  CHECK_FALSE(cd.scaled);
}

TEST_CASE("center leaves zero-mean data unchanged") {
  Matrix raw(4, 2);
  raw << 1, 2, -1, -2, 2, 1, -2, -1;
  const CenteredData cd = center(raw, false);
  CHECK(cd.x == raw);
  CHECK(cd.column_means.norm() == 0.0);
}

TEST_CASE("center with scaling divides by the sample sd") {
  Matrix raw(3, 1);
  raw << 0, 1, 2;
  const CenteredData cd = center(raw, true);
  // sample sd = sqrt(((-1)^2 + 0 + 1^2) / 2) = 1
  CHECK(cd.x(0, 0) == -1.0);
  CHECK(cd.x(1, 0) == 0.0);
  CHECK(cd.x(2, 0) == 1.0);
  CHECK(cd.column_means[0] == 1.0);
  CHECK(cd.scale_factors[0] == 1.0);
  CHECK(cd.scaled);
}

TEST_CASE("center rejects bad input") {
  Matrix one_row(1, 2);
  one_row << 1, 2;
  CHECK_THROWS_AS(center(one_row, false), Error);

  Matrix with_nan(3, 1);
  with_nan << 1, std::numeric_limits<double>::quiet_NaN(), 2;
  CHECK_THROWS_WITH_AS(center(with_nan, false),
                       doctest::Contains("NaN"), Error);

  Matrix constant(3, 2);
  constant << 1, 5, 2, 5, 3, 5;
  try {
    center(constant, true);
    FAIL("expected constant_column");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::constant_column);
    CHECK(std::string(e.what()).find("column 1") != std::string::npos);
  }
}

TEST_CASE("centered invariants hold on random data") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 3 + static_cast<Index>(seed % 17);
    const Index p = 1 + static_cast<Index>(seed % 7);
    const Matrix raw = 10.0 * random_matrix(n, p, seed);
    const CenteredData cd = center(raw, seed % 2 == 0);
    const double max_abs = cd.x.cwiseAbs().maxCoeff();
    for (Index j = 0; j < p; ++j) {
      CHECK(std::abs(cd.x.col(j).sum()) <= 1e-10 * static_cast<double>(n) * max_abs);
      if (cd.scaled) {
        const double var = cd.x.col(j).squaredNorm() / static_cast<double>(n - 1);
        CHECK(var == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("covariance of a single centered column") {
  Matrix x(2, 1);
  x << -1, 1;
  const Matrix s = covariance(as_centered(x));
  CHECK(s.rows() == 1);
  CHECK(s(0, 0) == 2.0);
}

TEST_CASE("covariance of orthogonal equal-norm columns is diagonal") {
  Matrix x(4, 2);
  x << 1, 1, -1, 1, 1, -1, -1, -1;
  const Matrix s = covariance(as_centered(x));
  CHECK(s(0, 1) == 0.0);
  CHECK(s(1, 0) == 0.0);
  CHECK(s(0, 0) == s(1, 1));
}

TEST_CASE("covariance hand example") {
  Matrix x(3, 2);
  x << -1, -1, 0, 0, 1, 1;
  const Matrix s = covariance(as_centered(x));
  CHECK(s(0, 0) == 1.0);
  CHECK(s(0, 1) == 1.0);
  CHECK(s(1, 0) == 1.0);
  CHECK(s(1, 1) == 1.0);
}

TEST_CASE("covariance is bitwise symmetric with nonnegative diagonal") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CenteredData cd = center(random_matrix(8, 6, 100 + seed), false);
    const Matrix s = covariance(cd);
    CHECK(s == Matrix(s.transpose()));
    CHECK(s.diagonal().minCoeff() >= 0.0);
  }
}

TEST_CASE("gram hand example") {
  Matrix x(2, 1);
  x << -1, 1;
  const Matrix k = gram(as_centered(x));
  CHECK(k(0, 0) == 1.0);
  CHECK(k(0, 1) == -1.0);
  CHECK(k(1, 0) == -1.0);
  CHECK(k(1, 1) == 1.0);
}

TEST_CASE("gram and covariance share nonzero eigenvalues") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Index n = 3 + static_cast<Index>(seed % 18);
    const Index p = 1 + static_cast<Index>((seed * 7) % 20);
    const CenteredData cd = center(random_matrix(n, p, 200 + seed), false);
    const auto cov_eig = oracle_eigen(covariance(cd));
    const auto gram_eig = oracle_eigen(gram(cd));
    const Index r = std::min(cd.n() - 1, cd.p());
    for (Index i = 0; i < r; ++i) {
      const double a = cov_eig.values[i];
      const double b = gram_eig.values[i];
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("total_variance equals the covariance trace") {
  const CenteredData cd = center(random_matrix(9, 5, 42), false);
  CHECK(total_variance(cd) ==
        doctest::Approx(covariance(cd).trace()).epsilon(1e-12));
}

TEST_CASE("solve_spd identity and diagonal") {
  const Matrix b = random_matrix(3, 2, 7);
  CHECK((solve_spd(Matrix::Identity(3, 3), b) - b).cwiseAbs().maxCoeff() == 0.0);

  Matrix a(2, 2);
  a << 2, 0, 0, 4;
  Matrix rhs(2, 1);
  rhs << 2, 8;
  const Matrix z = solve_spd(a, rhs);
  CHECK(z(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(z(1, 0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("solve_spd hand example") {
  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  Matrix rhs(2, 1);
  rhs << 3, 3;
  const Matrix z = solve_spd(a, rhs);
  CHECK(z(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_spd flags rank-deficient systems") {
  Matrix a(2, 2);
  a << 1, 1, 1, 1;
  Matrix rhs(2, 1);
  rhs << 1, 1;
  try {
    solve_spd(a, rhs);
    FAIL("expected singular_submatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_submatrix);
  }
}

TEST_CASE("solve_spd residual bound on random SPD systems") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index dim = 2 + static_cast<Index>(seed % 9);
    const Matrix a = random_spd(dim, 300 + seed, 0.1);
    const Matrix b = random_matrix(dim, 3, 400 + seed);
    const Matrix z = solve_spd(a, b);
    const double resid = (a * z - b).cwiseAbs().maxCoeff();
    CHECK(resid <= 1e-8 * b.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("orthonormalize keeps an orthonormal input") {
  Matrix m(3, 2);
  m << 1, 0, 0, 1, 0, 0;
  const Matrix q = orthonormalize(m);
  CHECK(q.cols() == 2);
  CHECK((q - m).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("orthonormalize drops duplicate directions") {
  Matrix m(3, 2);
  m << 1, 1, 0, 0, 0, 0;
  std::vector<Index> kept;
  const Matrix q = orthonormalize(m, &kept);
  CHECK(q.cols() == 1);
  CHECK(q(0, 0) == 1.0);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0] == 0);
}

TEST_CASE("orthonormalize hand example") {
  Matrix m(3, 2);
  m << 1, 1, 1, 0, 0, 1;
  const Matrix q = orthonormalize(m);
  REQUIRE(q.cols() == 2);
  const Matrix gram_q = q.transpose() * q;
  CHECK((gram_q - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("orthonormalize property: Q'Q = I on random inputs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Index n = 4 + static_cast<Index>(seed % 12);
    const Index k = 1 + static_cast<Index>(seed % n);
    const Matrix m = random_matrix(n, k, 500 + seed);
    const Matrix q = orthonormalize(m);
    const Matrix gram_q = q.transpose() * q;
    CHECK((gram_q - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff() <=
          1e-10);
  }
}
