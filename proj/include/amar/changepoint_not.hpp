#pragma once

// CUSUM contrast and Narrowest-Over-Threshold detection of level shifts in a
// short coefficient vector. All public indices are 1-based and inclusive: an
// interval [s, e] covers v_s..v_e, and a change-point b means v_b and v_{b+1}
// belong to different segments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "amar/error.hpp"
#include "amar/rng.hpp"

namespace amar {

struct Interval {
  int s = 1;
  int e = 2;

  int width() const noexcept { return e - s + 1; }
  bool contains(const Interval& other) const noexcept { return s <= other.s && other.e <= e; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ContrastResult {
  Interval interval;
  int argmax_b = 1;
  double value = 0.0;
};

struct IntervalMode {
  enum class Kind { all_pairs, random };
  Kind kind = Kind::all_pairs;
  int m = 0;
  std::uint64_t seed = 0;

  static IntervalMode all_pairs() { return {}; }
  static IntervalMode random(int m, std::uint64_t seed) { return {Kind::random, m, seed}; }
  /// All pairs up to p = 500, otherwise 10000 random intervals.
  static IntervalMode automatic(int p, std::uint64_t seed = 0) {
    return p <= 500 ? all_pairs() : random(10000, seed);
  }
};

struct IntervalSet {
  std::vector<Interval> intervals;
  IntervalMode mode;
  int p = 0;
};

namespace detail {

/// Prefix sums S[0] = 0, S[i] = v_1 + ... + v_i.
inline std::vector<double> prefix_sums(std::span<const double> v) {
  std::vector<double> S(v.size() + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) S[i + 1] = S[i] + v[i];
  return S;
}

inline double contrast_from_prefix(std::span<const double> S, int s, int e, int b) {
  const double n = e - s + 1;
  const double nl = b - s + 1;
  const double nr = e - b;
  const double left = S[static_cast<std::size_t>(b)] - S[static_cast<std::size_t>(s - 1)];
  const double right = S[static_cast<std::size_t>(e)] - S[static_cast<std::size_t>(b)];
  // sqrt(nl*nr/n) * (mean_left - mean_right), algebraically equal to the
  // two-term form and exactly zero on constant stretches of representable values.
  return std::sqrt(nl * nr / n) * std::abs(left / nl - right / nr);
}

inline void check_interval(std::size_t len, const Interval& iv) {
  require(iv.s >= 1 && iv.s < iv.e && static_cast<std::size_t>(iv.e) <= len, errc::invalid_argument,
          "interval [" + std::to_string(iv.s) + "," + std::to_string(iv.e) +
              "] invalid for signal of length " + std::to_string(len));
}

inline ContrastResult scan_prefix(std::span<const double> S, const Interval& iv) {
  ContrastResult best{iv, iv.s, -1.0};
  for (int b = iv.s; b < iv.e; ++b) {
    const double c = contrast_from_prefix(S, iv.s, iv.e, b);
    if (c > best.value) {
      best.value = c;
      best.argmax_b = b;
    }
  }
  return best;
}

}  // namespace detail

inline double contrast_cusum(std::span<const double> v, int s, int e, int b) {
  detail::require(s >= 1 && s <= b && b < e && static_cast<std::size_t>(e) <= v.size(),
                  errc::invalid_argument, "contrast requires 1 <= s <= b < e <= len(v)");
  double left = 0.0, right = 0.0;
  for (int t = s; t <= b; ++t) left += v[static_cast<std::size_t>(t - 1)];
  for (int t = b + 1; t <= e; ++t) right += v[static_cast<std::size_t>(t - 1)];
  const double n = e - s + 1, nl = b - s + 1, nr = e - b;
  return std::abs(std::sqrt(nr / (n * nl)) * left - std::sqrt(nl / (n * nr)) * right);
}

/// Maximum contrast over b in [s, e-1]; ties go to the smallest b.
inline ContrastResult scan_interval(std::span<const double> v, const Interval& iv) {
  detail::check_interval(v.size(), iv);
  const auto S = detail::prefix_sums(v.subspan(0, static_cast<std::size_t>(iv.e)));
  return detail::scan_prefix(S, iv);
}

inline IntervalSet generate_intervals(int p, IntervalMode mode = IntervalMode::all_pairs()) {
  detail::require(p >= 2, errc::invalid_argument, "interval generation needs p >= 2");
  IntervalSet out{{}, mode, p};
  if (mode.kind == IntervalMode::Kind::all_pairs) {
    out.intervals.reserve(static_cast<std::size_t>(p) * static_cast<std::size_t>(p - 1) / 2);
    for (int i = 1; i < p; ++i)
      for (int j = i + 1; j <= p; ++j) out.intervals.push_back({i, j});
    return out;
  }
  detail::require(mode.m >= 1, errc::invalid_argument, "random interval mode needs M >= 1");
  counter_stream rng(mode.seed);
  out.intervals.reserve(static_cast<std::size_t>(mode.m));
  for (int m = 0; m < mode.m; ++m) {
    int a, b;
    do {
      a = static_cast<int>(rng.uniform_int(1, p));
      b = static_cast<int>(rng.uniform_int(1, p));
    } while (a == b);
    out.intervals.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

/// Contrast maxima of a fixed signal over a fixed interval set. Building it
/// costs one scan per interval; detection at any threshold reuses the scans.
class NotScanner {
 public:
  NotScanner(std::span<const double> v, const IntervalSet& set) : len_(v.size()) {
    detail::require(v.size() >= 2, errc::invalid_argument, "NOT needs a signal of length >= 2");
    const auto S = detail::prefix_sums(v);
    scans_.reserve(set.intervals.size());
    for (const auto& iv : set.intervals) {
      detail::check_interval(v.size(), iv);
      scans_.push_back(detail::scan_prefix(S, iv));
    }
    // Narrowest first, then smallest s, then smallest e; the first qualifying
    // entry in this order is the selected interval.
    std::stable_sort(scans_.begin(), scans_.end(), [](const ContrastResult& a, const ContrastResult& b) {
      return std::tuple(a.interval.width(), a.interval.s, a.interval.e) <
             std::tuple(b.interval.width(), b.interval.s, b.interval.e);
    });
  }

  const std::vector<ContrastResult>& scans() const noexcept { return scans_; }

  double max_contrast() const noexcept {
    double m = 0.0;
    for (const auto& c : scans_) m = std::max(m, c.value);
    return m;
  }

  /// Change-points (sorted ascending). `selected`, when non-null, receives
  /// the chosen interval of every recursion step in visiting order.
  std::vector<int> detect(double zeta, std::vector<ContrastResult>* selected = nullptr) const {
    std::vector<int> found;
    recurse(1, static_cast<int>(len_), zeta, found, selected);
    std::sort(found.begin(), found.end());
    return found;
  }

 private:
  void recurse(int s, int e, double zeta, std::vector<int>& found,
               std::vector<ContrastResult>* selected) const {
    if (e <= s) return;
    const Interval range{s, e};
    for (const auto& c : scans_) {
      if (c.value > zeta && range.contains(c.interval)) {
        found.push_back(c.argmax_b);
        if (selected) selected->push_back(c);
        recurse(s, c.argmax_b, zeta, found, selected);
        recurse(c.argmax_b + 1, e, zeta, found, selected);
        return;
      }
    }
  }

  std::size_t len_;
  std::vector<ContrastResult> scans_;
};

inline std::vector<int> not_detect(std::span<const double> v, const IntervalSet& intervals, double zeta) {
  detail::require(zeta > 0.0, errc::invalid_argument, "threshold must be > 0");
  return NotScanner(v, intervals).detect(zeta);
}

struct PathEntry {
  double zeta;
  std::vector<int> points;
};

/// One independent detection per threshold. Results need not be nested.
inline std::vector<PathEntry> solution_path(std::span<const double> v, const IntervalSet& intervals,
                                            std::span<const double> zeta_grid) {
  detail::require(!zeta_grid.empty(), errc::invalid_argument, "threshold grid is empty");
  for (std::size_t i = 1; i < zeta_grid.size(); ++i)
    detail::require(zeta_grid[i] < zeta_grid[i - 1], errc::invalid_argument,
                    "threshold grid must be strictly descending");
  const NotScanner scanner(v, intervals);
  std::vector<PathEntry> out;
  out.reserve(zeta_grid.size());
  for (double z : zeta_grid) {
    detail::require(z > 0.0, errc::invalid_argument, "threshold must be > 0");
    out.push_back({z, scanner.detect(z)});
  }
  return out;
}

}  // namespace amar
