#include "babai/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace babai {

IntegerBox::IntegerBox(std::vector<long long> lower, std::vector<long long> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw DimensionError("box bound vectors must be nonempty and equally sized");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (lower_[i] > upper_[i]) {
      throw DomainError("box lower bound exceeds upper bound at coordinate " + std::to_string(i));
    }
  }
}

IntegerBox IntegerBox::uniform(std::size_t n, long long lo, long long hi) {
  if (n == 0) throw DimensionError("box dimension must be at least 1");
  return IntegerBox(std::vector<long long>(n, lo), std::vector<long long>(n, hi));
}

bool IntegerBox::is_cube() const {
  for (std::size_t i = 1; i < dim(); ++i) {
    if (width(i) != width(0)) return false;
  }
  return true;
}

long long IntegerBox::edge() const {
  if (!is_cube()) throw DomainError("box is not a cube");
  return width(0);
}

bool IntegerBox::contains(std::span<const long long> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  }
  return true;
}

long long round_half_to_smaller_magnitude(double c) {
  const double f = std::floor(c);
  const double frac = c - f;
  double rounded;
  if (frac < 0.5) {
    rounded = f;
  } else if (frac > 0.5) {
    rounded = f + 1.0;
  } else {
    rounded = std::trunc(c);  // tie: the candidate closer to zero
  }
  return static_cast<long long>(rounded);
}

namespace {

void check_lengths(const UpperTriangular& r, std::span<const double> ytilde,
                   const IntegerBox* box) {
  if (ytilde.size() != r.dim()) {
    throw DimensionError("ytilde length does not match matrix dimension");
  }
  if (box && box->dim() != r.dim()) {
    throw DimensionError("box dimension does not match matrix dimension");
  }
}

BabaiResult back_substitute(const UpperTriangular& r, std::span<const double> ytilde,
                            const IntegerBox* box) {
  const std::size_t n = r.dim();
  BabaiResult res;
  res.point.assign(n, 0);
  res.unclamped.assign(n, 0.0);
  res.clamped_low.assign(n, false);
  res.clamped_high.assign(n, false);

  for (std::size_t i = n; i-- > 0;) {
    double acc = ytilde[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= r(i, j) * static_cast<double>(res.point[j]);
    const double c = acc / r(i, i);
    res.unclamped[i] = c;
    const long long rounded = round_half_to_smaller_magnitude(c);
    long long x = rounded;
    if (box) {
      res.clamped_low[i] = rounded <= box->lower(i);
      res.clamped_high[i] = rounded >= box->upper(i);
      if (rounded <= box->lower(i)) {
        x = box->lower(i);
      } else if (rounded >= box->upper(i)) {
        x = box->upper(i);
      }
    }
    res.point[i] = x;
  }
  return res;
}

}  // namespace

BabaiResult babai_box(const UpperTriangular& r, std::span<const double> ytilde,
                      const IntegerBox& box) {
  check_lengths(r, ytilde, &box);
  return back_substitute(r, ytilde, &box);
}

BabaiResult babai_ordinary(const UpperTriangular& r, std::span<const double> ytilde) {
  check_lengths(r, ytilde, nullptr);
  return back_substitute(r, ytilde, nullptr);
}

double residual_sq(const UpperTriangular& r, std::span<const double> ytilde,
                   std::span<const long long> x) {
  const std::size_t n = r.dim();
  if (ytilde.size() != n || x.size() != n) throw DimensionError("residual_sq length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = ytilde[i];
    for (std::size_t j = i; j < n; ++j) acc -= r(i, j) * static_cast<double>(x[j]);
    total += acc * acc;
  }
  return total;
}

namespace {

struct Enumerator {
  const UpperTriangular& r;
  std::span<const double> ytilde;
  const IntegerBox& box;
  std::size_t n;

  std::vector<long long> current;
  std::vector<long long> best;
  double best_cost = std::numeric_limits<double>::infinity();

  // Depth-first over coordinates n-1 .. 0; the triangular structure makes the
  // partial residual of the assigned tail exact, so subtrees whose partial
  // cost already exceeds the incumbent are pruned.
  void descend(std::size_t level, double partial) {
    const std::size_t i = level - 1;
    double acc = ytilde[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= r(i, j) * static_cast<double>(current[j]);
    for (long long xi = box.lower(i); xi <= box.upper(i); ++xi) {
      const double term = acc - r(i, i) * static_cast<double>(xi);
      const double cost = partial + term * term;
      if (cost > best_cost) continue;
      current[i] = xi;
      if (i == 0) {
        if (cost < best_cost ||
            (cost == best_cost && std::lexicographical_compare(current.begin(), current.end(),
                                                               best.begin(), best.end()))) {
          best_cost = cost;
          best = current;
        }
      } else {
        descend(i, cost);
      }
    }
  }
};

}  // namespace

std::vector<long long> bils_enumerate(const UpperTriangular& r, std::span<const double> ytilde,
                                      const IntegerBox& box) {
  check_lengths(r, ytilde, &box);
  double count = 1.0;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    count *= static_cast<double>(box.width(i)) + 1.0;
    if (count > 1e7) throw TooLargeError("box holds more than 1e7 points");
  }

  Enumerator e{r, ytilde, box, r.dim(), std::vector<long long>(r.dim(), 0)};
  // Seed the incumbent with the lex-largest corner so equal-cost candidates
  // found later always win the lexicographic tie.
  e.best.assign(r.dim(), 0);
  for (std::size_t i = 0; i < r.dim(); ++i) e.best[i] = box.upper(i);
  e.best_cost = residual_sq(r, ytilde, e.best);
  e.descend(r.dim(), 0.0);
  return e.best;
}

}  // namespace babai
