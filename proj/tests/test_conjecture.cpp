#include <doctest.h>

#include <cmath>

#include "babai/conjecture.hpp"
#include "babai/estimate.hpp"
#include "babai/reorder.hpp"
#include "babai/rng.hpp"
#include "test_support.hpp"

using namespace babai;
using test_support::max_abs_diff;

namespace {

// Enumerates Z^-1 s over every point of a small box; the oracle for tightness
// and containment of the closed-form validity box.
std::pair<std::vector<long long>, std::vector<long long>> enumerate_image_bounds(
    const IntMatrix& u, const IntegerBox& box) {
  const std::size_t n = box.dim();
  std::vector<long long> point(n), lo(n, 0), hi(n, 0);
  for (std::size_t i = 0; i < n; ++i) point[i] = box.lower(i);
  bool first = true;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      long long acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += u(i, j) * point[j];
      if (first) {
        lo[i] = hi[i] = acc;
      } else {
        lo[i] = std::min(lo[i], acc);
        hi[i] = std::max(hi[i], acc);
      }
    }
    first = false;
    std::size_t i = n;
    bool done = true;
    while (i-- > 0) {
      if (point[i] < box.upper(i)) {
        ++point[i];
        done = false;
        break;
      }
      point[i] = box.lower(i);
    }
    if (done) return {lo, hi};
  }
}

}  // namespace

TEST_SUITE("conjecture") {

TEST_CASE("validity box of the identity transform is the box itself") {
  const IntegerBox box({-1, 0, 2}, {3, 5, 2});
  const auto vb = validity_box(IntMatrix::identity(3), box);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(vb.lbar[i] == box.lower(i));
    CHECK(vb.ubar[i] == box.upper(i));
  }
}

TEST_CASE("validity box rejects mismatched dimensions") {
  CHECK_THROWS_AS(validity_box(IntMatrix::identity(2), IntegerBox::uniform(3, 0, 1)),
                  DimensionError);
  CHECK_THROWS_AS(
      conditional_error_bounds(counterexample_matrix(4, 0.1),
                               validity_box(IntMatrix::identity(3), IntegerBox::uniform(3, 0, 1)),
                               0.1),
      DimensionError);
}

TEST_CASE("validity box of a shear matches the enumerated image") {
  // Z = [[1,1],[0,1]] has U = Z^-1 = [[1,-1],[0,1]].
  IntMatrix u(2, 2);
  u(0, 0) = 1;
  u(0, 1) = -1;
  u(1, 1) = 1;
  const IntegerBox box = IntegerBox::uniform(2, 0, 1);
  const auto vb = validity_box(u, box);
  CHECK(vb.lbar == std::vector<long long>{-1, 0});
  CHECK(vb.ubar == std::vector<long long>{1, 1});
}

TEST_CASE("validity box is tight for random small unimodular transforms") {
  const IntegerBox box = IntegerBox::uniform(3, 0, 2);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    // Random unimodular Z from a few integer shears and swaps; U tracks Z^-1.
    IntMatrix z = IntMatrix::identity(3);
    IntMatrix u = IntMatrix::identity(3);
    StreamRng rng(seed, 8);
    for (int step = 0; step < 6; ++step) {
      const auto i = static_cast<std::size_t>(rng.next_int(0, 2));
      const auto j = static_cast<std::size_t>(rng.next_int(0, 2));
      if (i == j) continue;
      const long long mu = rng.next_int(-2, 2);
      for (std::size_t row = 0; row < 3; ++row) z(row, j) += mu * z(row, i);
      for (std::size_t col = 0; col < 3; ++col) u(i, col) -= mu * u(j, col);
    }
    CHECK(std::abs(test_support::integer_determinant(z)) == 1);

    const auto vb = validity_box(u, box);
    const auto [lo, hi] = enumerate_image_bounds(u, box);
    CHECK(vb.lbar == lo);  // every image point inside, every bound attained
    CHECK(vb.ubar == hi);
  }
}

TEST_CASE("counterexample matrix has the stated entries and is LLL reduced") {
  const auto r = counterexample_matrix(5, 0.1);
  CHECK(r(0, 0) == doctest::Approx(0.004).epsilon(1e-15));
  for (std::size_t j = 1; j < 5; ++j) {
    CHECK(r(0, j) == doctest::Approx(0.002).epsilon(1e-15));
    CHECK(r(j, j) == doctest::Approx(1.0).epsilon(1e-15));
  }

  const auto red = lll_reduce(r, 1.0);
  CHECK(red.z == IntMatrix::identity(5));
  CHECK(max_abs_diff(red.rbar, r) == 0.0);

  CHECK_THROWS_AS(counterexample_matrix(1, 0.1), DimensionError);
}

TEST_CASE("ordinary success probability of the construction is sigma free") {
  for (std::size_t n : {5u, 10u, 20u, 40u}) {
    for (double sigma : {0.1, 0.4, 0.8}) {
      const auto r = counterexample_matrix(n, sigma);
      CHECK(std::abs(babai_ordinary_success_prob(r, sigma) - 0.0160) < 5e-4);
    }
  }
}

TEST_CASE("conditional error bounds reproduce the printed pair and their order") {
  const auto r = counterexample_matrix(5, 0.1);
  const auto vb = validity_box(IntMatrix::identity(5), IntegerBox::uniform(5, 0, 15));
  const auto [eb1, eb2] = conditional_error_bounds(r, vb, 0.1);
  CHECK(eb1 == doctest::Approx(0.9840).epsilon(1e-3));
  CHECK(eb2 == doctest::Approx(0.9364).epsilon(1e-3));
  CHECK(eb2 <= eb1);

  // Wider validity boxes push the second bound up toward the first.
  const auto vb_wide = validity_box(IntMatrix::identity(5), IntegerBox::uniform(5, 0, 4'000'000));
  const auto [wide1, wide2] = conditional_error_bounds(r, vb_wide, 0.1);
  CHECK(std::abs(wide2 - wide1) < 1e-6);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto rr = test_support::random_upper(4, 3000 + seed);
    const auto vbr = validity_box(IntMatrix::identity(4), IntegerBox::uniform(4, 0, 3));
    const auto [a, b] = conditional_error_bounds(rr, vbr, 0.5);
    CHECK(b <= a + 1e-15);
  }
}

TEST_CASE("first-coordinate probability: degenerate and limit cases") {
  CHECK(first_coordinate_box_probability(1.3, 2, 2, 0.4) ==
        doctest::Approx(centered_gaussian_mass(1.3, 0.4)).epsilon(1e-14));
  CHECK(first_coordinate_box_probability(1e6, 0, 15, 0.4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(first_coordinate_box_probability(0.0, 0, 1, 0.4), DomainError);
}

TEST_CASE("first-coordinate probability matches a direct simulation") {
  // c1 ~ N(xhat1, sigma^2 / r11^2) with xhat1 uniform; count rounded-in-box.
  const double r11 = 0.05, sigma = 0.4;
  const long long l1 = 0, u1 = 15;
  const long long trials = 1'000'000;
  StreamRng rng(77, 0);
  long long inside = 0;
  for (long long t = 0; t < trials; ++t) {
    const long long xhat = rng.next_int(l1, u1);
    const double c1 = static_cast<double>(xhat) + rng.next_gaussian(sigma / r11);
    const long long rounded = round_half_to_smaller_magnitude(c1);
    if (rounded >= l1 && rounded <= u1) ++inside;
  }
  const double rate = static_cast<double>(inside) / static_cast<double>(trials);
  const double expected = first_coordinate_box_probability(r11, l1, u1, sigma);
  const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
  CHECK(std::abs(rate - expected) <= 4.0 * se);
}

}  // TEST_SUITE
