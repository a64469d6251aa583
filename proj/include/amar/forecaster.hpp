#pragma once

// One-step-ahead forecasts and their error metrics.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "amar/error.hpp"
#include "amar/estimator.hpp"
#include "amar/timeseries_core.hpp"

namespace amar {

/// Scales plus coefficients; an empty scale set is the zero predictor.
struct ScaleModel {
  std::vector<int> scales;
  std::vector<double> alpha;

  static ScaleModel from(const AmarModel& m) { return {m.scales(), m.coeffs()}; }
  static ScaleModel from(const FitReport& r) { return {r.scales, r.alpha}; }

  int max_scale() const noexcept { return scales.empty() ? 0 : scales.back(); }
};

/// Conditional mean of the next value given the history (last element most recent).
inline double predict_next(const ScaleModel& model, std::span<const double> history) {
  const auto need = static_cast<std::size_t>(model.max_scale());
  detail::require(history.size() >= need, errc::insufficient_history,
                  "prediction needs " + std::to_string(need) + " past values, got " +
                      std::to_string(history.size()));
  double pred = 0.0;
  double window = 0.0;
  int summed = 0;
  const std::size_t n = history.size();
  for (std::size_t k = 0; k < model.scales.size(); ++k) {
    for (; summed < model.scales[k]; ++summed) window += history[n - 1 - static_cast<std::size_t>(summed)];
    pred += model.alpha[k] * window / model.scales[k];
  }
  return pred;
}

/// One-step predictions for every test point, conditioning on the observed past.
inline std::vector<double> rolling_predictions(const ScaleModel& model, std::span<const double> test,
                                               std::span<const double> history) {
  detail::require(!test.empty(), errc::invalid_argument, "test segment is empty");
  std::vector<double> series(history.begin(), history.end());
  series.reserve(history.size() + test.size());
  std::vector<double> preds;
  preds.reserve(test.size());
  for (double actual : test) {
    preds.push_back(predict_next(model, series));
    series.push_back(actual);
  }
  return preds;
}

inline double rolling_mspe(const ScaleModel& model, std::span<const double> test, std::span<const double> history) {
  const auto preds = rolling_predictions(model, test, history);
  double s = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const double r = preds[i] - test[i];
    s += r * r;
  }
  return s / static_cast<double>(test.size());
}

inline double rolling_rmspe(const ScaleModel& model, std::span<const double> test, std::span<const double> history) {
  return std::sqrt(rolling_mspe(model, test, history));
}

namespace detail {
inline int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }
}  // namespace detail

/// Fraction of test points whose sign is predicted correctly. A zero counts
/// as a hit only when prediction and outcome are both zero.
inline double hit_rate(const ScaleModel& model, std::span<const double> test, std::span<const double> history) {
  const auto preds = rolling_predictions(model, test, history);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < test.size(); ++i) hits += detail::sign(preds[i]) == detail::sign(test[i]);
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

}  // namespace amar
