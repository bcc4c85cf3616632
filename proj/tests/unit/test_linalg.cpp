#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pursuit/linalg.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/tolerances.hpp"

using namespace pursuit;

namespace {

// Textbook triple-loop reference product, kept separate from the library path.
DenseVector matvec_reference(const DenseMatrix& A, const DenseVector& v) {
  DenseVector y(A.rows(), 0.0);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) y[i] += A(i, j) * v[j];
  return y;
}

DenseMatrix random_matrix(int m, int n, Rng& rng) {
  DenseMatrix A(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) A(i, j) = rng.normal();
  return A;
}

DenseVector random_vector(int n, Rng& rng) {
  DenseVector v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("DenseMatrix stores column-major and validates entries") {
  DenseMatrix A(2, 3, {1, 2, 3, 4, 5, 6});
  CHECK(A(0, 0) == 1);
  CHECK(A(1, 0) == 2);
  CHECK(A(0, 1) == 3);
  CHECK(A(1, 2) == 6);
  CHECK(A.col(1)[0] == 3);
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
  double nan = std::nan("");
  CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, nan}), std::invalid_argument);
  CHECK(DenseMatrix::identity(3)(2, 2) == 1.0);
  CHECK(DenseMatrix::identity(3)(0, 2) == 0.0);
}

TEST_CASE("matvec and adjoint_matvec agree with the reference product") {
  Rng rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    int m = 3 + rng.uniform_int(6);
    int n = 1 + rng.uniform_int(7);
    DenseMatrix A = random_matrix(m, n, rng);
    DenseVector v = random_vector(n, rng);
    DenseVector u = random_vector(m, rng);

    DenseVector y = matvec(A, v);
    DenseVector y_ref = matvec_reference(A, v);
    REQUIRE(y.size() == y_ref.size());
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] == doctest::Approx(y_ref[i]).epsilon(1e-14));

    // adjoint via explicit transpose, then the same reference product
    DenseMatrix At(n, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) At(j, i) = A(i, j);
    DenseVector g = adjoint_matvec(A, u);
    DenseVector g_ref = matvec_reference(At, u);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(g[j] == doctest::Approx(g_ref[j]).epsilon(1e-14));
  }
}

TEST_CASE("matvec on the identity is a copy") {
  DenseVector v = {3.5, -2.0, 0.25};
  CHECK(matvec(DenseMatrix::identity(3), v) == v);
  CHECK(adjoint_matvec(DenseMatrix::identity(3), v) == v);
}

TEST_CASE("restrict_columns copies the listed columns in order") {
  DenseMatrix A(2, 4, {1, 2, 3, 4, 5, 6, 7, 8});
  SupportSet s(std::vector<int>{3, 0});  // constructor sorts
  DenseMatrix R = restrict_columns(A, s);
  REQUIRE(R.rows() == 2);
  REQUIRE(R.cols() == 2);
  CHECK(R(0, 0) == 1);
  CHECK(R(1, 0) == 2);
  CHECK(R(0, 1) == 7);
  CHECK(R(1, 1) == 8);
}

TEST_CASE("SupportSet semantics") {
  SupportSet s(std::vector<int>{4, 1, 7});
  CHECK(s.size() == 3);
  CHECK(s[0] == 1);
  CHECK(s[2] == 7);
  CHECK(s.contains(4));
  CHECK_FALSE(s.contains(2));
  CHECK(s.insert(2));
  CHECK_FALSE(s.insert(2));  // duplicate insert is a no-op
  CHECK(s.size() == 4);
  CHECK(s[1] == 2);  // stays sorted

  CHECK_THROWS_AS(SupportSet(std::vector<int>{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SupportSet(std::vector<int>{-1}), std::invalid_argument);

  SupportSet t(std::vector<int>{1, 2});
  CHECK(t.is_subset_of(s));
  CHECK_FALSE(s.is_subset_of(t));
  CHECK(t.disjoint_from(SupportSet(std::vector<int>{0, 3})));
  CHECK_FALSE(t.disjoint_from(SupportSet(std::vector<int>{2})));

  CHECK_NOTHROW(s.check_range(8));
  CHECK_THROWS_AS(s.check_range(7), std::out_of_range);

  SupportSet u(std::vector<int>{0, 7});
  u.insert_all(t);
  CHECK(u == SupportSet(std::vector<int>{0, 1, 2, 7}));
}

TEST_CASE("least_squares solves a square system exactly") {
  // [2 1; 1 3] z = [5; 10]  =>  z = (1, 3)
  DenseMatrix A(2, 2, {2, 1, 1, 3});
  DenseVector z = least_squares(A, {5, 10});
  REQUIRE(z.size() == 2);
  CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("least_squares matches the normal equations and leaves an orthogonal residual") {
  Rng rng(202);
  for (int trial = 0; trial < 5; ++trial) {
    int m = 8 + rng.uniform_int(8);
    int n = 2 + rng.uniform_int(4);
    DenseMatrix A = random_matrix(m, n, rng);
    DenseVector y = random_vector(m, rng);
    DenseVector z = least_squares(A, y);
    REQUIRE(static_cast<int>(z.size()) == n);

    // Normal equations: A^T A z = A^T y, solved by Cramer-free Gaussian
    // elimination on the small n x n system.
    auto column = [&](int j) { return DenseVector(A.col(j), A.col(j) + m); };
    std::vector<std::vector<double>> G(n, std::vector<double>(n + 1, 0.0));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) G[a][b] = dot(column(a), column(b));
      G[a][n] = dot(column(a), y);
    }
    for (int p = 0; p < n; ++p) {
      int best = p;
      for (int r = p + 1; r < n; ++r)
        if (std::abs(G[r][p]) > std::abs(G[best][p])) best = r;
      std::swap(G[p], G[best]);
      for (int r = 0; r < n; ++r) {
        if (r == p) continue;
        double f = G[r][p] / G[p][p];
        for (int c = p; c <= n; ++c) G[r][c] -= f * G[p][c];
      }
    }
    for (int a = 0; a < n; ++a) CHECK(z[a] == doctest::Approx(G[a][n] / G[a][a]).epsilon(1e-8));

    // Residual orthogonality: A^T (y - A z) ~ 0
    DenseVector r = y;
    DenseVector Az = matvec(A, z);
    for (int i = 0; i < m; ++i) r[i] -= Az[i];
    CHECK(inf_norm(adjoint_matvec(A, r)) <= tol::orthogonality * norm2(y) * 10.0);
  }
}

TEST_CASE("least_squares rejects rank-deficient input with a diagnostic") {
  DenseMatrix A(3, 2, {1, 2, 3, 2, 4, 6});  // second column = 2 * first
  try {
    least_squares(A, {1, 1, 1});
    FAIL("expected RankDeficiencyError");
  } catch (const RankDeficiencyError& e) {
    CHECK(e.column == 1);
    CHECK(e.pivot <= e.threshold);
    CHECK(e.threshold > 0.0);
  }
  // more columns than rows cannot be full column rank
  CHECK_THROWS_AS(least_squares(DenseMatrix(2, 3), {1, 1}), RankDeficiencyError);
  // zero columns: empty solution, no throw
  CHECK(least_squares(DenseMatrix(3, 0), {1, 2, 3}).empty());
}

TEST_CASE("extreme_singular_values on known matrices") {
  auto [lo_i, hi_i] = extreme_singular_values(DenseMatrix::identity(4));
  CHECK(lo_i == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hi_i == doctest::Approx(1.0).epsilon(1e-12));

  DenseMatrix D(3, 2);  // columns scaled to lengths 3 and 0.5, mutually orthogonal
  D(0, 0) = 3.0;
  D(1, 1) = 0.5;
  auto [lo_d, hi_d] = extreme_singular_values(D);
  CHECK(lo_d == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hi_d == doctest::Approx(3.0).epsilon(1e-12));

  // symmetric 2x2 [[2,1],[1,2]]: eigenvalues 1 and 3, so singular values too
  DenseMatrix B(2, 2, {2, 1, 1, 2});
  auto [lo_b, hi_b] = extreme_singular_values(B);
  CHECK(lo_b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hi_b == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("extreme_singular_values bounds |Av| on random probes") {
  Rng rng(303);
  DenseMatrix A = random_matrix(10, 6, rng);
  auto [lo, hi] = extreme_singular_values(A);
  REQUIRE(lo >= 0.0);
  REQUIRE(hi >= lo);
  for (int t = 0; t < 200; ++t) {
    DenseVector v = random_vector(6, rng);
    double nv = norm2(v);
    if (nv == 0.0) continue;
    double ratio = norm2(matvec(A, v)) / nv;
    CHECK(ratio >= lo - 1e-9 * hi);
    CHECK(ratio <= hi + 1e-9 * hi);
  }
}

TEST_CASE("extreme_eigenvalues_symmetric on closed-form cases") {
  // [[2,1],[1,2]] has eigenvalues 1 and 3
  auto [lo2, hi2] = extreme_eigenvalues_symmetric({2, 1, 1, 2}, 2);
  CHECK(lo2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hi2 == doctest::Approx(3.0).epsilon(1e-12));

  // diag(-1, 0, 5): unclamped extremes, sign preserved
  std::vector<double> D = {-1, 0, 0, 0, 0, 0, 0, 0, 5};
  auto [lo3, hi3] = extreme_eigenvalues_symmetric(D, 3);
  CHECK(lo3 == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(hi3 == doctest::Approx(5.0).epsilon(1e-12));

  // constant matrix of ones, n=4: eigenvalues {4, 0, 0, 0}
  std::vector<double> J(16, 1.0);
  auto [lo4, hi4] = extreme_eigenvalues_symmetric(J, 4);
  CHECK(lo4 == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(hi4 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("extreme_eigenvalues_symmetric is consistent with the Rayleigh quotient") {
  Rng rng(404);
  int n = 7;
  std::vector<double> G(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = rng.normal();
      G[i * n + j] = v;
      G[j * n + i] = v;
    }
  auto [lo, hi] = extreme_eigenvalues_symmetric(G, n);
  for (int t = 0; t < 300; ++t) {
    DenseVector v = random_vector(n, rng);
    double vv = dot(v, v);
    if (vv == 0.0) continue;
    double quad = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) quad += v[i] * G[i * n + j] * v[j];
    double rq = quad / vv;
    CHECK(rq >= lo - 1e-9 * (std::abs(lo) + std::abs(hi)));
    CHECK(rq <= hi + 1e-9 * (std::abs(lo) + std::abs(hi)));
  }
}

TEST_CASE("vector helpers") {
  CHECK(dot({1, 2, 3}, {4, 5, 6}) == 32.0);
  CHECK(norm2({3, 4}) == 5.0);
  CHECK(inf_norm({-7, 2, 5}) == 7.0);
  CHECK(norm2({}) == 0.0);
  CHECK(inf_norm({}) == 0.0);
}

}  // TEST_SUITE
