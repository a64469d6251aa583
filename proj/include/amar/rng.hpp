#pragma once

// Portable random streams.
//
// All randomness in the library comes from `counter_stream`, a counter-based
// generator: output n of a stream keyed by `seed` is
//
//     mix64(key + (n + 1) * 0x9e3779b97f4a7c15),   key = mix64(seed)
//
// where mix64 is the SplitMix64 finaliser. The stream is a pure function of
// (seed, n), so draws are identical on every platform and any position can be
// reached in O(1). Variates are produced with closed-form transforms (Box-Muller,
// inverse CDF) rather than <random> distributions, whose algorithms are
// implementation-defined.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace amar {

inline constexpr const char* rng_algorithm_name = "splitmix64-counter/v1";

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class counter_stream {
 public:
  static constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr counter_stream(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

  /// Raw 64-bit output at an absolute position.
  constexpr std::uint64_t at(std::uint64_t n) const noexcept {
    return mix64(key_ + (n + 1) * golden_gamma);
  }

  constexpr std::uint64_t next() noexcept { return at(counter_++); }

  /// Uniform on (0, 1]; never returns 0 so logs and negative powers are safe.
  double uniform_open0() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [lo, hi] by rejection (no modulo bias).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % range);
  }

  /// Standard normal pair via Box-Muller.
  void normal_pair(double& a, double& b) noexcept {
    const double u1 = uniform_open0();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    a = r * std::cos(theta);
    b = r * std::sin(theta);
  }

  std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace amar
