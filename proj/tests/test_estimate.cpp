#include <doctest.h>

#include <cmath>

#include "babai/estimate.hpp"
#include "test_support.hpp"

using namespace babai;
using test_support::random_upper;

namespace {

// Independent long double reimplementation of the clamped back substitution.
std::vector<long long> oracle_babai_box(const UpperTriangular& r, std::span<const double> y,
                                        const IntegerBox& box) {
  const std::size_t n = r.dim();
  std::vector<long long> x(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    long double acc = y[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= static_cast<long double>(r(i, j)) * x[j];
    const long double c = acc / static_cast<long double>(r(i, i));
    const long double fl = std::floor(c);
    long long rounded;
    const long double frac = c - fl;
    if (frac < 0.5L) {
      rounded = static_cast<long long>(fl);
    } else if (frac > 0.5L) {
      rounded = static_cast<long long>(fl) + 1;
    } else {
      rounded = static_cast<long long>(std::trunc(c));
    }
    if (rounded <= box.lower(i)) {
      x[i] = box.lower(i);
    } else if (rounded >= box.upper(i)) {
      x[i] = box.upper(i);
    } else {
      x[i] = rounded;
    }
  }
  return x;
}

// Plain full scan over the box in mixed-radix order; no pruning. The second,
// independently coded route for the enumeration oracle.
std::vector<long long> oracle_full_scan(const UpperTriangular& r, std::span<const double> y,
                                        const IntegerBox& box) {
  const std::size_t n = box.dim();
  std::vector<long long> x(n), best;
  for (std::size_t i = 0; i < n; ++i) x[i] = box.lower(i);
  double best_cost = std::numeric_limits<double>::infinity();
  while (true) {
    const double cost = residual_sq(r, y, x);
    if (cost < best_cost ||
        (cost == best_cost && std::lexicographical_compare(x.begin(), x.end(), best.begin(),
                                                           best.end()))) {
      best_cost = cost;
      best = x;
    }
    std::size_t i = n;
    while (i-- > 0) {
      if (x[i] < box.upper(i)) {
        ++x[i];
        break;
      }
      x[i] = box.lower(i);
      if (i == 0) return best;
    }
  }
}

std::vector<double> noiseless_rhs(const UpperTriangular& r, const std::vector<long long>& x) {
  const std::size_t n = r.dim();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) y[i] += r(i, j) * static_cast<double>(x[j]);
  return y;
}

}  // namespace

TEST_SUITE("estimate") {

TEST_CASE("box invariants and clamping") {
  CHECK_THROWS_AS(IntegerBox({0, 0}, {1}), DimensionError);
  CHECK_THROWS_AS(IntegerBox({2}, {1}), DomainError);
  CHECK(IntegerBox::uniform(3, 0, 3).is_cube());
  CHECK(IntegerBox({0, 0}, {1, 2}).is_cube() == false);

  const UpperTriangular r{{1}};
  const auto res = babai_box(r, std::vector<double>{5.3}, IntegerBox::uniform(1, 0, 3));
  CHECK(res.point[0] == 3);
  CHECK(res.unclamped[0] == doctest::Approx(5.3));
  CHECK(res.clamped_high[0]);
  CHECK_FALSE(res.clamped_low[0]);
}

TEST_CASE("rounding ties resolve toward the smaller magnitude") {
  CHECK(round_half_to_smaller_magnitude(0.5) == 0);
  CHECK(round_half_to_smaller_magnitude(1.5) == 1);
  CHECK(round_half_to_smaller_magnitude(2.5) == 2);
  CHECK(round_half_to_smaller_magnitude(-0.5) == 0);
  CHECK(round_half_to_smaller_magnitude(-1.5) == -1);
  CHECK(round_half_to_smaller_magnitude(0.49) == 0);
  CHECK(round_half_to_smaller_magnitude(0.51) == 1);
  CHECK(round_half_to_smaller_magnitude(-2.51) == -3);

  const UpperTriangular r{{1}};
  CHECK(babai_ordinary(r, std::vector<double>{3.5}).point[0] == 3);
  CHECK(babai_ordinary(r, std::vector<double>{-3.5}).point[0] == -3);
}

TEST_CASE("noiseless recovery is exact for both estimators") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = random_upper(4, 500 + seed);
    StreamRng rng(seed, 3);
    std::vector<long long> xhat(4);
    for (auto& v : xhat) v = rng.next_int(0, 3);
    const auto y = noiseless_rhs(r, xhat);
    CHECK(babai_box(r, y, IntegerBox::uniform(4, 0, 3)).point == xhat);
    CHECK(babai_ordinary(r, y).point == xhat);
  }
}

TEST_CASE("box estimate matches the independent recurrence") {
  const IntegerBox box = IntegerBox::uniform(3, 0, 3);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = random_upper(3, 600 + seed);
    StreamRng rng(seed, 4);
    std::vector<double> y(3);
    for (auto& v : y) v = 3.0 * rng.next_gaussian();
    const auto got = babai_box(r, y, box);
    CHECK(got.point == oracle_babai_box(r, y, box));
    // Ordinary and box agree when nothing clamped.
    bool clamped = false;
    for (std::size_t i = 0; i < 3; ++i) clamped |= got.clamped_low[i] || got.clamped_high[i];
    if (!clamped) CHECK(babai_ordinary(r, y).point == got.point);
  }
}

TEST_CASE("enumeration agrees with an independent full scan") {
  const UpperTriangular r{{1, 0.9}, {0, 0.5}};
  const IntegerBox box = IntegerBox::uniform(2, 0, 3);
  StreamRng rng(9, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> y{3.0 * rng.next_unit(), 2.0 * rng.next_unit()};
    CHECK(bils_enumerate(r, y, box) == oracle_full_scan(r, y, box));
  }
}

TEST_CASE("enumeration dominates the Babai point") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = random_upper(3, 700 + seed);
    const IntegerBox box = IntegerBox::uniform(3, 0, 2);
    StreamRng rng(seed, 5);
    std::vector<double> y(3);
    for (auto& v : y) v = 2.0 * rng.next_gaussian();
    const auto opt = bils_enumerate(r, y, box);
    const auto sub = babai_box(r, y, box).point;
    CHECK(residual_sq(r, y, opt) <= residual_sq(r, y, sub) + 1e-12);
    CHECK(box.contains(opt));
    CHECK(box.contains(sub));
  }
}

TEST_CASE("enumeration guard rejects oversized boxes") {
  const auto r = random_upper(9, 4);
  std::vector<double> y(9, 0.0);
  CHECK_THROWS_AS(bils_enumerate(r, y, IntegerBox::uniform(9, 0, 9)), TooLargeError);
}

TEST_CASE("length mismatches raise DimensionError") {
  const auto r = random_upper(3, 5);
  std::vector<double> y(2, 0.0);
  CHECK_THROWS_AS(babai_ordinary(r, y), DimensionError);
  CHECK_THROWS_AS(babai_box(r, std::vector<double>(3, 0.0), IntegerBox::uniform(2, 0, 1)),
                  DimensionError);
}

}  // TEST_SUITE
