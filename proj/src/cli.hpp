#pragma once

// Subcommand front end for the `amar` executable, plus the end-to-end
// workflows it drives (also called directly by the acceptance suite).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "amar/amar.hpp"

namespace amar::cli {

enum exit_code : int { ok = 0, usage = 2, data = 3, numerical = 4 };

int exit_code_for(errc code) noexcept;

/// Parses argv and runs one subcommand. Never throws.
int run(int argc, char** argv);

struct ForecastRow {
  std::size_t t = 0;  ///< 1-based position in the original (untransformed) column
  double actual = 0.0;
  double predicted = 0.0;
};

struct ForecastSummary {
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double mspe = 0.0;
  double rmspe = 0.0;
  double hit_rate = 0.0;
  std::vector<ForecastRow> rows;
};

/// Number of training points for a chronological split of n values.
std::size_t train_length(std::size_t n, double test_fraction);

/// One-step forecasts over the last test_fraction of the series. The model
/// acts on the transformed values; predictions are mapped back (mean added,
/// differencing undone) before being stored in rows. Errors and hit rate are
/// measured on the modelled series with its mean restored.
ForecastSummary evaluate_forecasts(const ScaleModel& model, const IngestedSeries& series, double test_fraction);

struct TwoScaleResult {
  SecondScaleSearch search;
  ForecastSummary forecast;
};

/// tau_1 = 1 fixed, tau_2 searched over [tau_min, tau_max] by training RSS,
/// then evaluated on the held-out tail.
TwoScaleResult two_scale_workflow(const IngestedSeries& series, double test_fraction = 0.3, int tau_min = 2,
                                  int tau_max = 251);

}  // namespace amar::cli
