#pragma once

// Ordinary and box-constrained Babai (nearest-plane) estimators, plus an
// exhaustive enumeration oracle for desk-scale ground truth.

#include <span>
#include <vector>

#include "babai/matrix.hpp"

namespace babai {

/// Integer box constraint: lower_i <= x_i <= upper_i componentwise.
class IntegerBox {
 public:
  IntegerBox(std::vector<long long> lower, std::vector<long long> upper);

  /// The box [lo, hi]^n.
  static IntegerBox uniform(std::size_t n, long long lo, long long hi);

  std::size_t dim() const { return lower_.size(); }
  long long lower(std::size_t i) const { return lower_[i]; }
  long long upper(std::size_t i) const { return upper_[i]; }
  long long width(std::size_t i) const { return upper_[i] - lower_[i]; }

  bool is_cube() const;
  /// Edge length of a cube box; DomainError when the box is not a cube.
  long long edge() const;

  bool contains(std::span<const long long> x) const;

 private:
  std::vector<long long> lower_, upper_;
};

/// Output of a Babai estimator. `unclamped` holds the real-valued back
/// substitution targets c_i; the clamped flags record, per coordinate,
/// whether the rounded c_i fell at or beyond the corresponding bound
/// (always false in ordinary mode).
struct BabaiResult {
  std::vector<long long> point;
  std::vector<double> unclamped;
  std::vector<bool> clamped_low;
  std::vector<bool> clamped_high;
};

/// Nearest integer with ties resolved toward the smaller magnitude
/// (e.g. 0.5 -> 0, 1.5 -> 1, -2.5 -> -2).
long long round_half_to_smaller_magnitude(double c);

/// Box-constrained Babai estimate: back substitution from the last coordinate,
/// each c_i rounded and then clamped into [lower_i, upper_i].
BabaiResult babai_box(const UpperTriangular& r, std::span<const double> ytilde,
                      const IntegerBox& box);

/// Ordinary Babai estimate: the same recurrence without clamping.
BabaiResult babai_ordinary(const UpperTriangular& r, std::span<const double> ytilde);

/// Exhaustive search for the box point minimizing ||ytilde - R x||^2, with
/// ties broken toward the lexicographically smallest vector. Guarded: the box
/// may contain at most 1e7 points (TooLargeError otherwise).
std::vector<long long> bils_enumerate(const UpperTriangular& r, std::span<const double> ytilde,
                                      const IntegerBox& box);

/// ||ytilde - R x||^2 for an integer candidate x.
double residual_sq(const UpperTriangular& r, std::span<const double> ytilde,
                   std::span<const long long> x);

}  // namespace babai
