#pragma once

// CSV ingestion for univariate and multivariate series, and tidy plot-data output.

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "amar/error.hpp"
#include "amar/estimator.hpp"
#include "amar/timeseries_core.hpp"

namespace amar {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// File line number (1-based, header is line 1) of each row.
  std::vector<std::size_t> line_numbers;
};

namespace detail {

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(trim(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  out.push_back(trim(cell));
  return out;
}

inline bool is_missing(const std::string& cell) {
  std::string lower = cell;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  return lower.empty() || lower == "na" || lower == "nan" || lower == "null";
}

inline std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace detail

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), errc::io, "cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    detail::require(cells.size() == table.header.size(), errc::parse,
                    "row " + std::to_string(lineno) + " has " + std::to_string(cells.size()) + " fields, expected " +
                        std::to_string(table.header.size()));
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(lineno);
  }
  detail::require(!table.header.empty(), errc::parse, "'" + path + "' is empty");
  return table;
}

/// Column selector: header name, or 0-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

inline ColumnRef parse_column_ref(const std::string& s) {
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    return static_cast<std::size_t>(std::stoul(s));
  return s;
}

inline std::size_t resolve_column(const CsvTable& table, const std::optional<ColumnRef>& ref) {
  if (!ref) {
    // Default: first column not named "t".
    for (std::size_t c = 0; c < table.header.size(); ++c)
      if (table.header[c] != "t") return c;
    detail::fail(errc::parse, "no data column besides 't'");
  }
  if (std::holds_alternative<std::size_t>(*ref)) {
    const auto c = std::get<std::size_t>(*ref);
    detail::require(c < table.header.size(), errc::parse, "column index " + std::to_string(c) + " out of range");
    return c;
  }
  const auto& name = std::get<std::string>(*ref);
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  detail::require(it != table.header.end(), errc::parse, "no column named '" + name + "'");
  return static_cast<std::size_t>(it - table.header.begin());
}

struct IngestOptions {
  bool difference = false;
  bool demean = false;
};

/// What was done to the raw column, so forecasts can be mapped back.
struct SeriesTransform {
  std::string column;
  bool differenced = false;
  bool demeaned = false;
  double mean_removed = 0.0;
  /// Raw levels after trimming edge gaps (needed to undo differencing).
  std::vector<double> levels;
  std::size_t leading_missing = 0;
  std::size_t trailing_missing = 0;
};

struct IngestedSeries {
  std::vector<double> values;
  SeriesTransform transform;
};

namespace detail {

/// Numeric column with missing values allowed only at the edges.
inline std::vector<double> numeric_column(const CsvTable& table, std::size_t col, std::size_t& leading,
                                          std::size_t& trailing) {
  const std::size_t n = table.rows.size();
  std::vector<std::optional<double>> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cell = table.rows[i][col];
    if (is_missing(cell)) continue;
    raw[i] = parse_number(cell);
    require(raw[i].has_value(), errc::parse,
            "row " + std::to_string(table.line_numbers[i]) + ": non-numeric value '" + cell + "' in column '" +
                table.header[col] + "'");
  }
  std::size_t first = 0, last = n;
  while (first < n && !raw[first]) ++first;
  while (last > first && !raw[last - 1]) --last;
  require(first < last, errc::parse, "column '" + table.header[col] + "' has no numeric values");
  std::vector<double> out;
  out.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) {
    require(raw[i].has_value(), errc::data_gap,
            "row " + std::to_string(table.line_numbers[i]) + ": missing value inside column '" + table.header[col] +
                "'");
    out.push_back(*raw[i]);
  }
  leading = first;
  trailing = n - last;
  return out;
}

inline std::vector<double> first_difference(const std::vector<double>& v) {
  std::vector<double> d;
  if (v.size() < 2) return d;
  d.reserve(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) d.push_back(v[i] - v[i - 1]);
  return d;
}

inline double mean_of(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += x;
  return static_cast<double>(s / static_cast<long double>(v.size()));
}

}  // namespace detail

/// Parsed series, optionally first-differenced and then demeaned.
inline IngestedSeries ingest_csv(const std::string& path, const std::optional<ColumnRef>& column = std::nullopt,
                                 IngestOptions opts = {}) {
  const CsvTable table = read_csv(path);
  const std::size_t col = resolve_column(table, column);
  IngestedSeries out;
  out.transform.column = table.header[col];
  out.transform.levels =
      detail::numeric_column(table, col, out.transform.leading_missing, out.transform.trailing_missing);
  out.values = out.transform.levels;
  if (opts.difference) {
    detail::require(out.values.size() >= 2, errc::insufficient_data, "differencing needs at least two values");
    out.values = detail::first_difference(out.values);
    out.transform.differenced = true;
  }
  if (opts.demean) {
    out.transform.mean_removed = detail::mean_of(out.values);
    for (double& v : out.values) v -= out.transform.mean_removed;
    out.transform.demeaned = true;
  }
  return out;
}

struct IngestedMatrix {
  Eigen::MatrixXd values;  ///< T x d
  std::vector<std::string> names;
  std::vector<double> means_removed;
};

/// Every column except "t" (or the selected ones) as a T x d matrix. Edge
/// gaps are trimmed jointly so all components cover the same rows.
inline IngestedMatrix ingest_csv_matrix(const std::string& path, const std::vector<ColumnRef>& columns = {},
                                        IngestOptions opts = {}) {
  const CsvTable table = read_csv(path);
  std::vector<std::size_t> cols;
  if (columns.empty()) {
    for (std::size_t c = 0; c < table.header.size(); ++c)
      if (table.header[c] != "t") cols.push_back(c);
  } else {
    for (const auto& ref : columns) cols.push_back(resolve_column(table, ref));
  }
  detail::require(!cols.empty(), errc::parse, "no data columns");

  std::size_t lead = 0, trail = 0;
  std::vector<std::vector<double>> raw;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t c : cols) {
    std::size_t l = 0, t = 0;
    raw.push_back(detail::numeric_column(table, c, l, t));
    edges.emplace_back(l, t);
    lead = std::max(lead, l);
    trail = std::max(trail, t);
  }
  const std::size_t n = table.rows.size() - lead - trail;
  detail::require(n >= 2, errc::insufficient_data, "columns share fewer than two rows");
  IngestedMatrix out;
  std::vector<std::vector<double>> series;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto offset = static_cast<std::ptrdiff_t>(lead - edges[k].first);
    std::vector<double> v(raw[k].begin() + offset, raw[k].begin() + offset + static_cast<std::ptrdiff_t>(n));
    if (opts.difference) v = detail::first_difference(v);
    double m = 0.0;
    if (opts.demean) {
      m = detail::mean_of(v);
      for (double& x : v) x -= m;
    }
    out.means_removed.push_back(m);
    out.names.push_back(table.header[cols[k]]);
    series.push_back(std::move(v));
  }
  out.values.resize(static_cast<Eigen::Index>(series.front().size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < series.size(); ++k)
    for (std::size_t i = 0; i < series[k].size(); ++i)
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = series[k][i];
  return out;
}

// ---------------------------------------------------------------------------
// Plot data

enum class PlotKind { path, coeffs, spectral };

struct SpectralPayload {
  double alpha1 = 0.7;
  int tau1 = 1;
  int points = 512;
};

using PlotPayload = std::variant<std::vector<double>, FitReport, SpectralPayload>;

namespace detail {
inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(static_cast<bool>(out), errc::io, "cannot write '" + path + "'");
  out << std::setprecision(17);
  return out;
}
}  // namespace detail

/// Frequencies i / (2 (n + 1)), i = 1..n, strictly inside (0, 1/2).
inline std::vector<double> spectral_grid(int n) {
  std::vector<double> f(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) f[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / (2.0 * (n + 1));
  return f;
}

/// Writes tidy CSV: path -> t,x; coeffs -> lag,beta_hat,beta_constrained,is_scale_boundary;
/// spectral -> f,density.
inline void emit_plot_data(PlotKind kind, const PlotPayload& payload, const std::string& path) {
  switch (kind) {
    case PlotKind::path: {
      const auto* x = std::get_if<std::vector<double>>(&payload);
      detail::require(x != nullptr, errc::invalid_argument, "path plot needs a series");
      auto out = detail::open_out(path);
      out << "t,x\n";
      for (std::size_t t = 0; t < x->size(); ++t) out << (t + 1) << ',' << (*x)[t] << '\n';
      break;
    }
    case PlotKind::coeffs: {
      const auto* r = std::get_if<FitReport>(&payload);
      detail::require(r != nullptr, errc::invalid_argument, "coefficient plot needs a fit report");
      auto out = detail::open_out(path);
      out << "lag,beta_hat,beta_constrained,is_scale_boundary\n";
      const std::size_t p = static_cast<std::size_t>(r->chosen_p);
      for (std::size_t j = 1; j <= p; ++j) {
        const double hat = j <= r->beta_unconstrained.p() ? r->beta_unconstrained.beta(j) : 0.0;
        const double con = j <= r->beta_constrained.p() ? r->beta_constrained.beta(j) : 0.0;
        const bool boundary = std::find(r->scales.begin(), r->scales.end(), static_cast<int>(j)) != r->scales.end();
        out << j << ',' << hat << ',' << con << ',' << (boundary ? 1 : 0) << '\n';
      }
      break;
    }
    case PlotKind::spectral: {
      const auto* s = std::get_if<SpectralPayload>(&payload);
      detail::require(s != nullptr, errc::invalid_argument, "spectral plot needs (alpha1, tau1, points)");
      detail::require(s->points >= 1, errc::invalid_argument, "need at least one frequency");
      auto out = detail::open_out(path);
      out << "f,density\n";
      for (double f : spectral_grid(s->points))
        out << f << ',' << spectral_density_single_scale(s->alpha1, s->tau1, f) << '\n';
      break;
    }
  }
}

}  // namespace amar
