#pragma once

// Multiscale estimation: OLS AR(p) fit, NOT detection of the scales on the
// fitted coefficients, OLS refit of the scale coefficients, and SIC-driven
// choice of the threshold and of p.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "amar/changepoint_not.hpp"
#include "amar/error.hpp"
#include "amar/timeseries_core.hpp"

namespace amar {

namespace detail {

struct LeastSquares {
  Eigen::VectorXd coef;
  double rss = 0.0;
};

/// Column-pivoted QR solve; rank deficiency is an error.
inline LeastSquares least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, const std::string& what) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < A.cols()) {
    fail(errc::singular_design, what + ": design matrix has rank " + std::to_string(qr.rank()) +
                                    " < " + std::to_string(A.cols()) + " columns");
  }
  LeastSquares out;
  out.coef = qr.solve(y);
  out.rss = (y - A * out.coef).squaredNorm();
  return out;
}

/// Extended-precision prefix sums: P[0] = 0, P[i] = x_1 + ... + x_i.
inline std::vector<long double> long_prefix(std::span<const double> x) {
  std::vector<long double> P(x.size() + 1, 0.0L);
  for (std::size_t i = 0; i < x.size(); ++i) P[i + 1] = P[i] + x[i];
  return P;
}

/// Mean of x_{t-1}, ..., x_{t-tau} (1-based t) from prefix sums.
inline double running_mean(const std::vector<long double>& P, std::size_t t, int tau) {
  return static_cast<double>((P[t - 1] - P[t - 1 - static_cast<std::size_t>(tau)]) / tau);
}

inline double sum_squares(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace detail

struct ArFit {
  ArModel beta;
  double rss = 0.0;
  /// rss / (rows - p)
  double residual_variance = 0.0;
  std::size_t rows = 0;
};

/// OLS of x_t on (x_{t-1}, ..., x_{t-p}) over rows t = p+1..T, no intercept.
inline ArFit fit_ar_ols(std::span<const double> x, int p) {
  detail::require(p >= 1, errc::invalid_order, "AR order must be >= 1");
  const std::size_t T = x.size();
  detail::require(T > 2 * static_cast<std::size_t>(p), errc::insufficient_data,
                  "AR(" + std::to_string(p) + ") fit needs more than " + std::to_string(2 * p) +
                      " observations, got " + std::to_string(T));
  const auto n = static_cast<Eigen::Index>(T - static_cast<std::size_t>(p));
  Eigen::MatrixXd A(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t t = static_cast<std::size_t>(i) + static_cast<std::size_t>(p);  // 0-based
    y(i) = x[t];
    for (int j = 1; j <= p; ++j) A(i, j - 1) = x[t - static_cast<std::size_t>(j)];
  }
  auto ls = detail::least_squares(A, y, "AR(" + std::to_string(p) + ") fit");
  std::vector<double> beta(ls.coef.data(), ls.coef.data() + ls.coef.size());
  const auto rows = static_cast<std::size_t>(n);
  return {ArModel(std::move(beta)), ls.rss, ls.rss / static_cast<double>(rows - static_cast<std::size_t>(p)), rows};
}

/// Residual sum of squares of an AR predictor over rows t = first_row..T (1-based).
inline double ar_rss(std::span<const double> x, std::span<const double> beta, std::size_t first_row) {
  detail::require(first_row > beta.size(), errc::invalid_argument, "first row must exceed the AR order");
  double rss = 0.0;
  for (std::size_t t = first_row; t <= x.size(); ++t) {
    double pred = 0.0;
    for (std::size_t j = 1; j <= beta.size(); ++j) pred += beta[j - 1] * x[t - 1 - j];
    const double r = x[t - 1] - pred;
    rss += r * r;
  }
  return rss;
}

struct ScaleFit {
  std::vector<double> alpha;
  double rss = 0.0;
  /// rss / (rows - q)
  double residual_variance = 0.0;
  std::size_t rows = 0;
};

/// OLS of x_t on the running means over the given scales, rows
/// t = tau_max+1..T. Equal to least squares on the AR design with beta
/// constrained constant between consecutive scales.
inline ScaleFit refit_scales(std::span<const double> x, std::span<const int> scales) {
  detail::require(!scales.empty(), errc::invalid_argument, "refit needs at least one scale");
  for (std::size_t k = 0; k < scales.size(); ++k) {
    detail::require(scales[k] >= 1, errc::invalid_argument, "scales must be >= 1");
    detail::require(k == 0 || scales[k] >= scales[k - 1], errc::invalid_argument, "scales must be sorted");
  }
  const int tau_max = scales.back();
  const std::size_t T = x.size();
  detail::require(2 * static_cast<std::size_t>(tau_max) < T, errc::insufficient_data,
                  "largest scale must be below T/2");
  for (std::size_t k = 1; k < scales.size(); ++k) {
    if (scales[k] == scales[k - 1]) {
      detail::fail(errc::singular_design,
                   "scale " + std::to_string(scales[k]) + " is repeated; its regressors are collinear");
    }
  }
  const auto P = detail::long_prefix(x);
  const auto q = static_cast<Eigen::Index>(scales.size());
  const auto n = static_cast<Eigen::Index>(T - static_cast<std::size_t>(tau_max));
  Eigen::MatrixXd A(n, q);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t t = static_cast<std::size_t>(i) + static_cast<std::size_t>(tau_max) + 1;  // 1-based
    y(i) = x[t - 1];
    for (Eigen::Index k = 0; k < q; ++k) A(i, k) = detail::running_mean(P, t, scales[static_cast<std::size_t>(k)]);
  }
  auto ls = detail::least_squares(A, y, "scale refit");
  const auto rows = static_cast<std::size_t>(n);
  return {std::vector<double>(ls.coef.data(), ls.coef.data() + ls.coef.size()), ls.rss,
          ls.rss / static_cast<double>(rows - scales.size()), rows};
}

/// T log(RSS) + 2 q log(T), with in-sample predictions over t = 1..T and the
/// unobserved X_0, X_{-1}, ... set to the sample mean. RSS == 0 gives -inf.
inline double sic_score(std::span<const double> x, std::span<const int> scales, std::span<const double> alpha) {
  detail::require(scales.size() == alpha.size(), errc::invalid_argument, "scales/alpha length mismatch");
  const std::size_t T = x.size();
  detail::require(T >= 2, errc::insufficient_data, "SIC needs at least two observations");
  double rss = 0.0;
  if (scales.empty()) {
    rss = detail::sum_squares(x);
  } else {
    const int tau_max = *std::max_element(scales.begin(), scales.end());
    long double mean = 0.0L;
    for (double v : x) mean += v;
    mean /= static_cast<long double>(T);
    std::vector<double> ext(static_cast<std::size_t>(tau_max), static_cast<double>(mean));
    ext.insert(ext.end(), x.begin(), x.end());
    const auto P = detail::long_prefix(ext);
    for (std::size_t t = 1; t <= T; ++t) {
      const std::size_t te = t + static_cast<std::size_t>(tau_max);
      double pred = 0.0;
      for (std::size_t k = 0; k < scales.size(); ++k) pred += alpha[k] * detail::running_mean(P, te, scales[k]);
      const double r = x[t - 1] - pred;
      rss += r * r;
    }
  }
  if (rss == 0.0) return -std::numeric_limits<double>::infinity();
  const double Td = static_cast<double>(T);
  return Td * std::log(rss) + 2.0 * static_cast<double>(scales.size()) * std::log(Td);
}

/// C T^{-1/2} (ln T)^{3/2}.
inline double default_threshold(double T, double C = 0.5) {
  detail::require(T >= 2.0, errc::invalid_argument, "threshold rule needs T >= 2");
  return C * std::pow(T, -0.5) * std::pow(std::log(T), 1.5);
}

/// 32 geometric points from 20 * zeta0 down to 0.05 * zeta0.
inline std::vector<double> default_zeta_grid(std::size_t T, int points = 32) {
  const double z0 = default_threshold(static_cast<double>(T));
  const double hi = 20.0 * z0, lo = 0.05 * z0;
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double frac = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    grid[static_cast<std::size_t>(i)] = hi * std::pow(lo / hi, frac);
  }
  return grid;
}

/// p grid {1, 2, 4, ...} capped at ceil(sqrt(T)) and at p < T/2.
inline std::vector<int> default_p_grid(std::size_t T) {
  const auto cap = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(T))));
  std::vector<int> grid;
  for (int p = 1; p <= cap && 2 * static_cast<std::size_t>(p) < T; p *= 2) grid.push_back(p);
  return grid;
}

struct SicEntry {
  double zeta = 0.0;
  int p = 0;
  int q_hat = 0;
  /// NaN when the candidate was discarded (q_hat > q_max or singular refit).
  double sic = std::numeric_limits<double>::quiet_NaN();
};

struct FitReport {
  std::vector<int> scales;
  std::vector<double> alpha;
  ArModel beta_unconstrained{std::vector<double>{0.0}};
  ArModel beta_constrained{std::vector<double>{0.0}};
  double chosen_zeta = 0.0;
  int chosen_p = 0;
  std::vector<SicEntry> sic_trace;
  double residual_variance = 0.0;
  double sic = std::numeric_limits<double>::quiet_NaN();

  int q_hat() const noexcept { return static_cast<int>(scales.size()); }
};

/// beta implied by (scales, alpha), zero-padded to length p.
inline ArModel constrained_beta(std::span<const int> scales, std::span<const double> alpha, int p) {
  detail::require(p >= 1, errc::invalid_order, "p must be >= 1");
  std::vector<double> beta(static_cast<std::size_t>(p), 0.0);
  for (std::size_t k = 0; k < scales.size(); ++k) {
    detail::require(scales[k] <= p, errc::invalid_order, "scale exceeds p");
    const double level = alpha[k] / scales[k];
    for (int j = 1; j <= scales[k]; ++j) beta[static_cast<std::size_t>(j - 1)] += level;
  }
  return ArModel(std::move(beta));
}

/// Threshold specification: a single value, an explicit descending grid, the
/// default grid for the sample size, or the full solution path (one threshold
/// just below every distinct interval contrast, so every distinct detection
/// result is visited).
struct ZetaChoice {
  struct SolutionPath {};
  std::variant<std::monostate, double, std::vector<double>, SolutionPath> value;

  static ZetaChoice automatic() { return {}; }
  static ZetaChoice fixed(double z) { return {z}; }
  static ZetaChoice grid(std::vector<double> g) { return {std::move(g)}; }
  static ZetaChoice solution_path() { return {SolutionPath{}}; }

  bool is_solution_path() const noexcept { return std::holds_alternative<SolutionPath>(value); }

  /// Grid for a series of length T; empty for the solution path, which is
  /// data-dependent and built per fitted coefficient vector.
  std::vector<double> resolve(std::size_t T) const {
    if (std::holds_alternative<double>(value)) return {std::get<double>(value)};
    if (std::holds_alternative<std::vector<double>>(value)) return std::get<std::vector<double>>(value);
    if (is_solution_path()) return {};
    return default_zeta_grid(T);
  }
};

/// Thresholds visiting every distinct NOT result for this scanner: one above
/// the largest contrast, then one just below each distinct contrast value.
inline std::vector<double> solution_path_thresholds(const NotScanner& scanner) {
  std::vector<double> values;
  values.reserve(scanner.scans().size());
  for (const auto& c : scanner.scans())
    if (c.value > 0.0) values.push_back(c.value);
  std::sort(values.begin(), values.end(), std::greater<>());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<double> grid;
  grid.reserve(values.size() + 1);
  grid.push_back(values.empty() ? 1.0 : values.front() * 2.0);
  for (double v : values) {
    const double below = std::nextafter(v, 0.0);
    if (below > 0.0 && below < grid.back()) grid.push_back(below);
  }
  return grid;
}

struct FitOptions {
  std::optional<int> p;  ///< nullopt selects p by SIC
  ZetaChoice zeta = ZetaChoice::automatic();
  int q_max = 10;
  std::optional<IntervalMode> intervals;  ///< nullopt: all pairs for p <= 500, else 10000 random
  std::uint64_t interval_seed = 0;
};

namespace detail {

inline void check_grid(std::span<const double> grid) {
  require(!grid.empty(), errc::invalid_argument, "threshold grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(grid[i] > 0.0 && std::isfinite(grid[i]), errc::invalid_argument, "thresholds must be positive");
    require(i == 0 || grid[i] < grid[i - 1], errc::invalid_argument, "threshold grid must be strictly descending");
  }
}

struct Candidate {
  std::vector<int> scales;
  ScaleFit fit;
  double sic = std::numeric_limits<double>::quiet_NaN();
  bool feasible = false;
};

/// Steps 2-4 plus SIC over a threshold grid, given the Step-1 coefficients.
/// Returns the best feasible report (chosen_zeta set) or nullopt, and appends
/// to `trace`.
inline std::optional<FitReport> select_over_grid(std::span<const double> x, const ArModel& beta_hat,
                                                 std::span<const double> grid, int q_max,
                                                 const FitOptions& opts, std::vector<SicEntry>& trace) {
  const int p = static_cast<int>(beta_hat.p());
  std::optional<NotScanner> scanner;
  if (p >= 2) {
    const IntervalMode mode = opts.intervals.value_or(IntervalMode::automatic(p, opts.interval_seed));
    scanner.emplace(beta_hat.coeffs(), generate_intervals(p, mode));
  }
  std::vector<double> path_grid;
  if (opts.zeta.is_solution_path()) {
    path_grid = scanner ? solution_path_thresholds(*scanner) : std::vector<double>{1.0};
    grid = path_grid;
  }
  std::map<std::vector<int>, Candidate> cache;
  const Candidate* best = nullptr;
  double best_zeta = 0.0;
  for (double zeta : grid) {  // descending, so ties keep the larger threshold
    std::vector<int> scales = scanner ? scanner->detect(zeta) : std::vector<int>{};
    auto it = cache.find(scales);
    if (it == cache.end()) {
      Candidate c;
      c.scales = scales;
      if (static_cast<int>(scales.size()) <= q_max) {
        try {
          if (!scales.empty()) c.fit = refit_scales(x, scales);
          c.sic = sic_score(x, scales, c.fit.alpha);
          c.feasible = true;
        } catch (const error& e) {
          if (e.code() != errc::singular_design) throw;
        }
      }
      it = cache.emplace(std::move(scales), std::move(c)).first;
    }
    const Candidate& c = it->second;
    trace.push_back({zeta, p, static_cast<int>(c.scales.size()), c.feasible ? c.sic : std::numeric_limits<double>::quiet_NaN()});
    if (c.feasible && (best == nullptr || c.sic < best->sic)) {
      best = &c;
      best_zeta = zeta;
    }
  }
  if (best == nullptr) return std::nullopt;

  FitReport r;
  r.scales = best->scales;
  r.alpha = best->fit.alpha;
  r.beta_unconstrained = beta_hat;
  r.beta_constrained = constrained_beta(r.scales, r.alpha, p);
  r.chosen_zeta = best_zeta;
  r.chosen_p = p;
  r.sic = best->sic;
  r.residual_variance = r.scales.empty() ? sum_squares(x) / static_cast<double>(x.size())
                                         : best->fit.residual_variance;
  return r;
}

}  // namespace detail

struct ThresholdSelection {
  double zeta;
  FitReport report;
};

/// Steps 2-4 and SIC selection from given AR coefficients. This is the seam
/// used when the Step-1 fit is bypassed (e.g. injecting an exact beta).
inline ThresholdSelection select_threshold_from_beta(std::span<const double> x, const ArModel& beta_hat,
                                                     int q_max, std::span<const double> zeta_grid,
                                                     const FitOptions& opts = {}) {
  if (!opts.zeta.is_solution_path()) detail::check_grid(zeta_grid);
  std::vector<SicEntry> trace;
  auto best = detail::select_over_grid(x, beta_hat, zeta_grid, q_max, opts, trace);
  if (!best) {
    detail::fail(errc::infeasible_threshold,
                 "every threshold in the grid yields more than q_max = " + std::to_string(q_max) +
                     " scales; extend the grid towards larger thresholds");
  }
  best->sic_trace = std::move(trace);
  return {best->chosen_zeta, std::move(*best)};
}

/// Fixed p, SIC-minimising threshold over the grid with q_hat <= q_max.
inline ThresholdSelection select_threshold(std::span<const double> x, int p, int q_max,
                                           std::span<const double> zeta_grid, const FitOptions& opts = {}) {
  const ArFit ar = fit_ar_ols(x, p);
  return select_threshold_from_beta(x, ar.beta, q_max, zeta_grid, opts);
}

/// Joint SIC minimisation over the p grid and the threshold grid; ties go
/// to the smaller p, then the larger threshold.
inline FitReport select_p(std::span<const double> x, int q_max, std::span<const double> zeta_grid,
                          const FitOptions& opts = {}) {
  detail::require(x.size() >= 16, errc::insufficient_data, "order selection needs T >= 16");
  if (!opts.zeta.is_solution_path()) detail::check_grid(zeta_grid);
  std::vector<SicEntry> trace;
  std::optional<FitReport> best;
  for (int p : default_p_grid(x.size())) {
    const ArFit ar = fit_ar_ols(x, p);
    auto cand = detail::select_over_grid(x, ar.beta, zeta_grid, q_max, opts, trace);
    if (cand && (!best || cand->sic < best->sic)) best = std::move(cand);
  }
  if (!best) {
    detail::fail(errc::infeasible_threshold,
                 "no (p, threshold) pair yields at most q_max = " + std::to_string(q_max) + " scales");
  }
  best->sic_trace = std::move(trace);
  return std::move(*best);
}

/// Full estimation procedure.
inline FitReport amar_fit(std::span<const double> x, const FitOptions& opts = {}) {
  detail::require(x.size() >= 32, errc::insufficient_data,
                  "fitting needs at least 32 observations, got " + std::to_string(x.size()));
  const auto grid = opts.zeta.resolve(x.size());
  if (opts.p) return select_threshold(x, *opts.p, opts.q_max, grid, opts).report;
  return select_p(x, opts.q_max, grid, opts);
}

/// Report for user-specified scales (no detection); chosen_p is the largest scale.
inline FitReport fit_fixed_scales(std::span<const double> x, std::vector<int> scales) {
  std::sort(scales.begin(), scales.end());
  const ScaleFit fit = refit_scales(x, scales);
  FitReport r;
  r.scales = std::move(scales);
  r.alpha = fit.alpha;
  r.chosen_p = r.scales.back();
  r.beta_unconstrained = fit_ar_ols(x, r.chosen_p).beta;
  r.beta_constrained = constrained_beta(r.scales, r.alpha, r.chosen_p);
  r.residual_variance = fit.residual_variance;
  r.sic = sic_score(x, r.scales, r.alpha);
  return r;
}

struct SecondScaleSearch {
  int best_tau2 = 0;
  FitReport report;
  /// (tau2, training RSS) for every candidate.
  std::vector<std::pair<int, double>> rss_by_tau2;
};

/// Two-scale model with tau_1 = 1 fixed and tau_2 chosen from [tau_min, tau_max]
/// by residual sum of squares. All candidates are scored on the common rows
/// t = tau_max+1..T so their RSS values are comparable.
inline SecondScaleSearch search_second_scale(std::span<const double> x, int tau_min = 2, int tau_max = 251) {
  detail::require(tau_min >= 2 && tau_min <= tau_max, errc::invalid_argument, "need 2 <= tau_min <= tau_max");
  detail::require(2 * static_cast<std::size_t>(tau_max) < x.size(), errc::insufficient_data,
                  "largest candidate scale must be below T/2");
  const auto P = detail::long_prefix(x);
  const std::size_t T = x.size();
  const auto n = static_cast<Eigen::Index>(T - static_cast<std::size_t>(tau_max));
  Eigen::VectorXd y(n);
  Eigen::MatrixXd A(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t t = static_cast<std::size_t>(i) + static_cast<std::size_t>(tau_max) + 1;
    y(i) = x[t - 1];
    A(i, 0) = x[t - 2];
  }
  SecondScaleSearch out;
  double best_rss = std::numeric_limits<double>::infinity();
  for (int tau2 = tau_min; tau2 <= tau_max; ++tau2) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::size_t t = static_cast<std::size_t>(i) + static_cast<std::size_t>(tau_max) + 1;
      A(i, 1) = detail::running_mean(P, t, tau2);
    }
    const double rss = detail::least_squares(A, y, "second-scale search").rss;
    out.rss_by_tau2.emplace_back(tau2, rss);
    if (rss < best_rss) {
      best_rss = rss;
      out.best_tau2 = tau2;
    }
  }
  out.report = fit_fixed_scales(x, {1, out.best_tau2});
  return out;
}

}  // namespace amar
