#pragma once

// Monte Carlo harness: model presets, accuracy metrics and aggregated tables.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "amar/error.hpp"
#include "amar/estimator.hpp"
#include "amar/forecaster.hpp"
#include "amar/simulator.hpp"
#include "amar/timeseries_core.hpp"

namespace amar {

/// floor(T^0.4), computed exactly as the largest k with k^5 <= T^2.
inline int floor_pow04(std::size_t T) {
  const auto T2 = static_cast<unsigned __int128>(T) * T;
  auto k = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(T), 0.4)));
  const auto pow5 = [](std::uint64_t v) {
    unsigned __int128 r = 1;
    for (int i = 0; i < 5; ++i) r *= v;
    return r;
  };
  while (k > 0 && pow5(k) > T2) --k;
  while (pow5(k + 1) <= T2) ++k;
  return static_cast<int>(k);
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"M1",  "M2",  "M3",  "M4",  "M5",  "M6",  "M1'", "M2'",
                                                 "M3'", "M4'", "M5'", "M6'", "M7",  "M8",  "M9"};
  return names;
}

namespace detail {
inline std::string canonical_preset(std::string name) {
  // "M1p" is accepted as a shell-friendly spelling of "M1'".
  if (name.size() == 3 && name[0] == 'M' && (name[2] == 'p' || name[2] == 'P')) name[2] = '\'';
  if (!name.empty() && name[0] == 'm') name[0] = 'M';
  return name;
}

inline std::vector<double> tile(std::initializer_list<double> block, int times) {
  std::vector<double> out;
  for (int i = 0; i < times; ++i) out.insert(out.end(), block);
  return out;
}
}  // namespace detail

/// Presets with N(0,1) innovations. M6 and M6' depend on T through
/// tau_2 = floor(T^0.4); M7-M9 are given by their AR coefficients.
inline AmarModel preset(const std::string& raw_name, std::size_t T = 0) {
  const std::string name = detail::canonical_preset(raw_name);
  const auto needs_T = [&] {
    detail::require(T >= 2, errc::invalid_argument, "preset " + name + " requires the sample size T");
    return floor_pow04(T);
  };
  if (name == "M1") return AmarModel({1, 3}, {0.3, 0.6});
  if (name == "M2") return AmarModel({2, 5}, {1.9, -1.0});
  if (name == "M3") return AmarModel({1, 5, 14}, {0.4, -1.0, 1.4});
  if (name == "M4") return AmarModel({1, 6, 7, 8}, {0.5, -4.8, 8.4, -3.2});
  if (name == "M5") return AmarModel({10}, {0.9});
  if (name == "M6") return AmarModel({1, needs_T()}, {0.49, 0.49});
  if (name == "M1'") return AmarModel({1, 3}, {0.4, 0.6});
  if (name == "M2'") return AmarModel({2, 5}, {1.5, -0.5});
  if (name == "M3'") return AmarModel({1, 5, 14}, {0.5, -1.0, 1.4});
  if (name == "M4'") return AmarModel({1, 6, 7, 8}, {1.0, -4.8, 11.2, -6.4});
  if (name == "M5'") return AmarModel({10}, {1.0});
  if (name == "M6'") return AmarModel({1, needs_T()}, {0.5, 0.5});
  if (name == "M7") return ar_to_amar(ArModel(detail::tile({0.2, -0.2}, 8)));
  if (name == "M8") return ar_to_amar(ArModel(detail::tile({0.2, 0.0, 0.0, -0.2}, 4)));
  if (name == "M9") return ar_to_amar(ArModel(detail::tile({0.2, 0.2, -0.2, -0.2}, 4)));
  detail::fail(errc::unknown_preset, "unknown preset '" + raw_name + "'");
}

inline ArModel preset_beta(const std::string& name, std::size_t T = 0) {
  const AmarModel m = preset(name, T);
  return amar_to_ar(m, m.max_scale());
}

/// Primed presets (the unit-root family) simulate with allow_nonstationary.
/// M3' keeps its stated coefficients, which sum to 0.9, so it is in fact stationary.
inline bool preset_is_unit_root(const std::string& name) {
  return detail::canonical_preset(name).find('\'') != std::string::npos;
}

/// Hausdorff distance between two index sets. Both empty gives 0; exactly
/// one empty gives `empty_sentinel` (the AR order p by convention).
inline double hausdorff(std::span<const int> a, std::span<const int> b, double empty_sentinel) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return empty_sentinel;
  const auto directed = [](std::span<const int> from, std::span<const int> to) {
    int worst = 0;
    for (int x : from) {
      int nearest = std::numeric_limits<int>::max();
      for (int y : to) nearest = std::min(nearest, std::abs(x - y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return static_cast<double>(std::max(directed(a, b), directed(b, a)));
}

struct Difficulty {
  int delta_T = 0;             ///< min spacing of 0 = tau_0 < tau_1 < ... < tau_q < tau_{q+1} = p
  double underline_alpha = 0;  ///< min_j |alpha_j| / tau_j
};

inline Difficulty difficulty(const AmarModel& model, int p) {
  detail::require(p >= model.max_scale(), errc::invalid_order, "p must be >= the largest scale");
  Difficulty out{std::numeric_limits<int>::max(), std::numeric_limits<double>::infinity()};
  int prev = 0;
  for (std::size_t k = 0; k < model.q(); ++k) {
    out.delta_T = std::min(out.delta_T, model.scales()[k] - prev);
    prev = model.scales()[k];
    out.underline_alpha = std::min(out.underline_alpha, std::abs(model.coeffs()[k]) / model.scales()[k]);
  }
  out.delta_T = std::min(out.delta_T, p - prev);
  return out;
}

enum class BenchMetric { abs_q_error, hausdorff, beta_sq_error, mspe_ratio_minus_1, exact_recovery };
inline constexpr std::array<BenchMetric, 5> all_bench_metrics = {
    BenchMetric::abs_q_error, BenchMetric::hausdorff, BenchMetric::beta_sq_error, BenchMetric::mspe_ratio_minus_1,
    BenchMetric::exact_recovery};

inline const char* to_string(BenchMetric m) noexcept {
  switch (m) {
    case BenchMetric::abs_q_error: return "abs_q_error";
    case BenchMetric::hausdorff: return "hausdorff";
    case BenchMetric::beta_sq_error: return "beta_sq_error";
    case BenchMetric::mspe_ratio_minus_1: return "mspe_ratio_minus_1";
    case BenchMetric::exact_recovery: return "exact_recovery";
  }
  return "unknown";
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

/// Mean and standard error (sample sd / sqrt(n)), summed in index order.
inline MeanSe mean_se(std::span<const double> v) {
  MeanSe out;
  if (v.empty()) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double s = 0.0;
  for (double x : v) s += x;
  out.mean = s / static_cast<double>(v.size());
  if (v.size() < 2) {
    out.se = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
  return out;
}

struct ReplicationResult {
  bool ok = false;
  std::string failure;
  std::array<double, all_bench_metrics.size()> metrics{};
  std::vector<int> scales;
  int chosen_p = 0;
};

struct BenchmarkRow {
  std::string model;
  std::size_t T = 0;
  int reps = 0;
  int failures = 0;
  std::array<MeanSe, all_bench_metrics.size()> metrics{};

  const MeanSe& operator[](BenchMetric m) const { return metrics[static_cast<std::size_t>(m)]; }
};

struct BenchOptions {
  std::size_t test_length = 100;  ///< T*, held-out points continuing the same path
  FitOptions fit;
  /// Replaces the preset's N(0,1) innovations (the seed is always per replication).
  std::optional<InnovationSpec> innovation;
  int burn_in = -1;
  /// 0 uses AMAR_THREADS or hardware concurrency.
  unsigned threads = 0;
};

/// Seed of replication r.
inline std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t r) { return base_seed ^ r; }

/// One simulate-fit-evaluate cycle.
inline ReplicationResult run_replication(const std::string& model_name, std::size_t T, std::uint64_t seed,
                                         const BenchOptions& opts = {}) {
  ReplicationResult res;
  try {
    AmarModel truth = preset(model_name, T);
    const InnovationSpec spec = opts.innovation.value_or(truth.innovation()).with_seed(seed);
    truth = truth.with_innovation(spec);
    const auto path = simulate_path(truth, T + opts.test_length,
                                    {opts.burn_in, preset_is_unit_root(model_name)});
    const std::span<const double> all(path.x);
    const auto train = all.first(T);
    const auto test = all.subspan(T);

    FitOptions fo = opts.fit;
    fo.interval_seed = mix64(seed);
    const FitReport fit = amar_fit(train, fo);

    const auto& tau = truth.scales();
    const ArModel beta_true = amar_to_ar(truth, truth.max_scale());
    const std::size_t len = std::max(beta_true.p(), fit.beta_constrained.p());
    double beta_err = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      const double a = j < fit.beta_constrained.p() ? fit.beta_constrained.coeffs()[j] : 0.0;
      const double b = j < beta_true.p() ? beta_true.coeffs()[j] : 0.0;
      beta_err += (a - b) * (a - b);
    }
    double oracle = 0.0;
    for (std::size_t i = T; i < path.innovations.size(); ++i) oracle += path.innovations[i] * path.innovations[i];
    oracle /= static_cast<double>(opts.test_length);
    const double mspe = rolling_mspe(ScaleModel::from(fit), test, train);

    res.metrics[static_cast<std::size_t>(BenchMetric::abs_q_error)] =
        std::abs(static_cast<double>(fit.q_hat()) - static_cast<double>(truth.q()));
    res.metrics[static_cast<std::size_t>(BenchMetric::hausdorff)] =
        hausdorff(fit.scales, tau, static_cast<double>(fit.chosen_p));
    res.metrics[static_cast<std::size_t>(BenchMetric::beta_sq_error)] = beta_err;
    res.metrics[static_cast<std::size_t>(BenchMetric::mspe_ratio_minus_1)] = mspe / oracle - 1.0;
    res.metrics[static_cast<std::size_t>(BenchMetric::exact_recovery)] = fit.scales == tau ? 1.0 : 0.0;
    res.scales = fit.scales;
    res.chosen_p = fit.chosen_p;
    res.ok = true;
  } catch (const error& e) {
    res.failure = e.what();
  }
  return res;
}

inline unsigned bench_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AMAR_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Replications r = 0..R-1 of one (model, T) cell, in index order.
inline std::vector<ReplicationResult> run_cell(const std::string& model, std::size_t T, int R, std::uint64_t seed,
                                               const BenchOptions& opts = {}) {
  std::vector<ReplicationResult> results(static_cast<std::size_t>(R));
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int r = next++; r < R; r = next++)
      results[static_cast<std::size_t>(r)] = run_replication(model, T, replication_seed(seed, static_cast<std::uint64_t>(r)), opts);
  };
  const unsigned n = std::min<unsigned>(bench_threads(opts.threads), static_cast<unsigned>(R));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  return results;
}

inline BenchmarkRow aggregate(const std::string& model, std::size_t T, std::span<const ReplicationResult> results) {
  BenchmarkRow row{model, T, static_cast<int>(results.size()), 0, {}};
  std::array<std::vector<double>, all_bench_metrics.size()> cols;
  for (const auto& r : results) {
    if (!r.ok) {
      ++row.failures;
      continue;
    }
    for (std::size_t m = 0; m < cols.size(); ++m) cols[m].push_back(r.metrics[m]);
  }
  for (std::size_t m = 0; m < cols.size(); ++m) row.metrics[m] = mean_se(cols[m]);
  return row;
}

inline std::vector<BenchmarkRow> run_benchmark(std::span<const std::string> models, std::span<const std::size_t> Ts,
                                               int R, std::uint64_t seed, const BenchOptions& opts = {}) {
  detail::require(R >= 2, errc::invalid_argument, "benchmark needs at least 2 replications");
  for (const auto& m : models) (void)preset(m, 1000);  // reject unknown names before any work
  std::vector<BenchmarkRow> rows;
  for (const auto& m : models)
    for (std::size_t T : Ts) {
      const auto results = run_cell(m, T, R, seed, opts);
      rows.push_back(aggregate(m, T, results));
    }
  return rows;
}

/// CSV with header model,T,reps,metric,mean,se; failures appear as their own metric.
inline void write_benchmark_csv(std::ostream& os, std::span<const BenchmarkRow> rows) {
  os << "model,T,reps,metric,mean,se\n";
  os.precision(10);
  for (const auto& row : rows) {
    for (auto m : all_bench_metrics) {
      const auto& v = row[m];
      os << row.model << ',' << row.T << ',' << row.reps << ',' << to_string(m) << ',' << v.mean << ',' << v.se << '\n';
    }
    os << row.model << ',' << row.T << ',' << row.reps << ",failures," << row.failures << ",0\n";
  }
}

}  // namespace amar
