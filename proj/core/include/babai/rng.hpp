#pragma once

// Deterministic, counter-derived random streams. Stream `index` of a master
// seed is a pure function of (seed, index), so trials can be executed in any
// order, or in parallel, and still reproduce bit-identical draws.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace babai {

/// SplitMix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of the index-th independent substream of `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x632BE59BD9B4E019ull));
}

/// One random stream: SplitMix64 core plus uniform/Gaussian conversions.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream)
      : state_(substream_seed(seed, stream)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log argument.
  double next_unit_positive() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal deviate via Box-Muller; pairs are cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(next_unit_positive()));
    const double angle = 2.0 * std::numbers::pi * next_unit();
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  double next_gaussian(double stddev) { return stddev * next_gaussian(); }

  /// Uniform integer on [lo, hi], both ends inclusive.
  long long next_int(long long lo, long long hi) {
    const auto width = static_cast<std::uint64_t>(hi - lo) + 1u;
    const auto scaled = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * width) >> 64);
    return lo + static_cast<long long>(scaled);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace babai
