#include <doctest.h>

#include <cmath>

#include "babai/matrix.hpp"
#include "test_support.hpp"

using namespace babai;
using test_support::max_abs_diff;
using test_support::random_upper;

namespace {

double reconstruction_error(const QRFactors& qr, const DenseMatrix& a) {
  const DenseMatrix back = qr.q1 * qr.r.to_dense();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      num += (back(i, j) - a(i, j)) * (back(i, j) - a(i, j));
      den += a(i, j) * a(i, j);
    }
  return std::sqrt(num / den);
}

double orthonormality_error(const DenseMatrix& q1) {
  const DenseMatrix gram = q1.transposed() * q1;
  double worst = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("type invariants are enforced") {
  CHECK_THROWS_AS(DenseMatrix(0, 3), DimensionError);
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
  CHECK_THROWS_AS(DenseMatrix(1, 1, {std::nan("")}), DomainError);

  CHECK_THROWS_AS(UpperTriangular({{1, 2}, {0.5, 1}}), DomainError);   // below diagonal
  CHECK_THROWS_AS(UpperTriangular({{1, 2}, {0, -1}}), DomainError);    // sign
  CHECK_THROWS_AS(UpperTriangular({{1, 2}, {0, 0}}), DomainError);     // zero diagonal
}

TEST_CASE("qr of the identity is the identity") {
  const auto qr = qr_factorize(DenseMatrix::identity(3));
  CHECK(max_abs_diff(qr.q1, DenseMatrix::identity(3)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(max_abs_diff(qr.r.to_dense(), DenseMatrix::identity(3)) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("qr of a positive diagonal matrix is trivial") {
  const DenseMatrix a{{2, 0}, {0, 3}};
  const auto qr = qr_factorize(a);
  CHECK(max_abs_diff(qr.q1, DenseMatrix::identity(2)) < 1e-15);
  CHECK(qr.r(0, 0) == doctest::Approx(2.0));
  CHECK(qr.r(1, 1) == doctest::Approx(3.0));
}

TEST_CASE("qr reconstructs a random 6x4 matrix") {
  StreamRng rng(7, 0);
  std::vector<double> e(24);
  for (double& v : e) v = rng.next_gaussian();
  const DenseMatrix a(6, 4, std::move(e));
  const auto qr = qr_factorize(a);
  CHECK(orthonormality_error(qr.q1) < 1e-10);
  CHECK(reconstruction_error(qr, a) < 1e-10);
}

TEST_CASE("qr reconstruction holds across random shapes") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    StreamRng rng(seed, 1);
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next_int(0, 7));
    const std::size_t m = n + static_cast<std::size_t>(rng.next_int(0, 5));
    std::vector<double> e(m * n);
    for (double& v : e) v = rng.next_gaussian();
    const DenseMatrix a(m, n, std::move(e));
    const auto qr = qr_factorize(a);
    CHECK(orthonormality_error(qr.q1) < 1e-10);
    CHECK(reconstruction_error(qr, a) < 1e-10);
    for (std::size_t i = 0; i < n; ++i) CHECK(qr.r(i, i) > 0.0);
  }
}

TEST_CASE("qr error cases") {
  CHECK_THROWS_AS(qr_factorize(DenseMatrix(2, 3)), DimensionError);
  // Two identical columns: rank deficient.
  const DenseMatrix a{{1, 1}, {2, 2}, {3, 3}};
  CHECK_THROWS_AS(qr_factorize(a), RankDeficientError);
}

TEST_CASE("factoring an already triangular matrix is idempotent") {
  const auto r = random_upper(5, 42);
  const auto qr = qr_factorize(r.to_dense());
  CHECK(max_abs_diff(qr.r, r) < 1e-12);
  CHECK(max_abs_diff(qr.q1, DenseMatrix::identity(5)) < 1e-12);
}

TEST_CASE("givens swap with zero superdiagonal swaps the diagonal") {
  const UpperTriangular r{{1, 0}, {0, 2}};
  const auto rb = givens_swap(r, 1);
  CHECK(rb(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rb(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rb(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("givens swap reproduces the printed 2x2 values") {
  const UpperTriangular r{{3.5, 3}, {0, 1}};
  const auto rb = givens_swap(r, 1);
  CHECK(rb(0, 0) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(rb(1, 1) == doctest::Approx(3.5 / std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("givens swap satisfies all three rotation identities") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto r = random_upper(5, 1000 + seed);
    StreamRng rng(seed, 2);
    const auto k = static_cast<std::size_t>(rng.next_int(1, 4));
    const auto rb = givens_swap(r, k);

    const double rpp = r(k - 1, k - 1), rpq = r(k - 1, k), rqq = r(k, k);
    CHECK(rb(k - 1, k - 1) * rb(k - 1, k - 1) ==
          doctest::Approx(rpq * rpq + rqq * rqq).epsilon(1e-12));
    CHECK(rb(k - 1, k) * rb(k - 1, k) + rb(k, k) * rb(k, k) ==
          doctest::Approx(rpp * rpp).epsilon(1e-12));
    CHECK(rb(k - 1, k - 1) * rb(k, k) == doctest::Approx(rpp * rqq).epsilon(1e-12));

    // Determinant preservation.
    CHECK(rb.diagonal_product() ==
          doctest::Approx(r.diagonal_product()).epsilon(1e-12));

    // Untouched rows stay untouched.
    for (std::size_t i = 0; i < r.dim(); ++i) {
      if (i == k - 1 || i == k) continue;
      for (std::size_t j = 0; j < r.dim(); ++j) {
        const std::size_t jj = (j == k - 1) ? k : (j == k ? k - 1 : j);
        CHECK(rb(i, j) == doctest::Approx(r(i, jj)).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("givens swap index range") {
  const auto r = random_upper(3, 5);
  CHECK_THROWS_AS(givens_swap(r, 0), IndexError);
  CHECK_THROWS_AS(givens_swap(r, 3), IndexError);
}

}  // TEST_SUITE
