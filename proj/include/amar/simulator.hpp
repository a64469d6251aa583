#pragma once

// Sample paths from multiscale / AR models under Gaussian or heavy-tailed noise.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "amar/error.hpp"
#include "amar/rng.hpp"
#include "amar/timeseries_core.hpp"

namespace amar {

/// n i.i.d. innovations; a pure function of the spec (including its seed).
inline std::vector<double> draw_innovations(const InnovationSpec& spec, std::size_t n) {
  detail::require(n >= 1, errc::invalid_argument, "need at least one innovation");
  counter_stream rng(spec.seed());
  std::vector<double> out(n);
  switch (spec.kind()) {
    case InnovationSpec::Kind::gaussian:
      for (std::size_t i = 0; i < n; i += 2) {
        double a, b;
        rng.normal_pair(a, b);
        out[i] = spec.sigma() * a;
        if (i + 1 < n) out[i + 1] = spec.sigma() * b;
      }
      break;
    case InnovationSpec::Kind::pareto: {
      const double inv = -1.0 / spec.tail_index();
      for (auto& z : out) {
        const std::uint64_t bits = rng.next();
        const double u = static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double magnitude = std::pow(u, inv);
        z = (bits & 1U) ? -magnitude : magnitude;
      }
      break;
    }
    case InnovationSpec::Kind::cauchy:
      for (auto& z : out) z = std::tan(std::numbers::pi * (rng.uniform_open0() - 0.5));
      break;
  }
  return out;
}

inline int default_burn_in(int max_scale) { return 1000 + 10 * max_scale; }

struct SimulatedPath {
  std::vector<double> x;
  /// Innovations aligned with x (burn-in portion dropped).
  std::vector<double> innovations;
};

struct SimulateOptions {
  int burn_in = -1;  ///< negative selects default_burn_in
  bool allow_nonstationary = false;
};

/// AR recursion from a zero initial state. Empty beta gives i.i.d. noise.
inline SimulatedPath simulate_ar(std::span<const double> beta, const InnovationSpec& spec,
                                 std::size_t T, int burn_in) {
  detail::require(T >= 1, errc::invalid_argument, "path length must be >= 1");
  detail::require(burn_in >= 0, errc::invalid_argument, "burn-in must be >= 0");
  const std::size_t total = T + static_cast<std::size_t>(burn_in);
  const auto eps = draw_innovations(spec, total);
  const std::size_t p = beta.size();
  std::vector<double> x(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    double v = eps[t];
    const std::size_t lags = std::min(p, t);
    for (std::size_t j = 1; j <= lags; ++j) v += beta[j - 1] * x[t - j];
    if (!std::isfinite(v)) {
      detail::fail(errc::explosive_path,
                   "non-finite value at simulated index " + std::to_string(t) +
                       " (burn-in " + std::to_string(burn_in) + ")");
    }
    x[t] = v;
  }
  const auto offset = static_cast<std::ptrdiff_t>(burn_in);
  return {std::vector<double>(x.begin() + offset, x.end()),
          std::vector<double>(eps.begin() + offset, eps.end())};
}

inline SimulatedPath simulate_path(const AmarModel& model, std::size_t T, SimulateOptions opts = {}) {
  const ArModel ar = amar_to_ar(model, model.max_scale());
  if (!opts.allow_nonstationary) {
    detail::require(is_stationary_exact(ar).stationary, errc::explosive_path,
                    "model is not stationary; set allow_nonstationary to simulate it");
  }
  const int burn = opts.burn_in < 0 ? default_burn_in(model.max_scale()) : opts.burn_in;
  return simulate_ar(ar.coeffs(), model.innovation(), T, burn);
}

/// Observations only.
inline std::vector<double> simulate(const AmarModel& model, std::size_t T, SimulateOptions opts = {}) {
  return simulate_path(model, T, opts).x;
}

}  // namespace amar
