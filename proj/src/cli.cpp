#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace amar::cli {

int exit_code_for(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument:
    case errc::invalid_order:
    case errc::degenerate_parameter:
    case errc::domain:
    case errc::unknown_preset:
      return usage;
    case errc::parse:
    case errc::data_gap:
    case errc::io:
    case errc::insufficient_data:
    case errc::insufficient_history:
      return data;
    case errc::not_representable:
    case errc::explosive_path:
    case errc::singular_design:
    case errc::infeasible_threshold:
      return numerical;
  }
  return numerical;
}

std::size_t train_length(std::size_t n, double test_fraction) {
  detail::require(test_fraction > 0.0 && test_fraction < 1.0, errc::invalid_argument,
                  "test fraction must lie in (0, 1)");
  const auto n_test = static_cast<std::size_t>(std::floor(static_cast<double>(n) * test_fraction));
  detail::require(n_test >= 1 && n_test < n, errc::insufficient_data, "series too short for the requested split");
  return n - n_test;
}

ForecastSummary evaluate_forecasts(const ScaleModel& model, const IngestedSeries& series, double test_fraction) {
  const auto& y = series.values;
  const auto& tr = series.transform;
  ForecastSummary out;
  out.n_train = train_length(y.size(), test_fraction);
  out.n_test = y.size() - out.n_train;
  const std::span<const double> all(y);
  const auto preds = rolling_predictions(model, all.subspan(out.n_train), all.first(out.n_train));

  const double mu = tr.mean_removed;
  const std::size_t offset = tr.differenced ? 1 : 0;
  double sse = 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    const std::size_t i = out.n_train + k;
    const double actual_model = y[i] + mu;
    const double pred_model = preds[k] + mu;
    sse += (actual_model - pred_model) * (actual_model - pred_model);
    if (detail::sign(pred_model) == detail::sign(actual_model)) ++hits;
    ForecastRow row;
    row.t = tr.leading_missing + i + offset + 1;
    if (tr.differenced) {
      row.actual = tr.levels[i + 1];
      row.predicted = tr.levels[i] + pred_model;
    } else {
      row.actual = actual_model;
      row.predicted = pred_model;
    }
    out.rows.push_back(row);
  }
  out.mspe = sse / static_cast<double>(preds.size());
  out.rmspe = std::sqrt(out.mspe);
  out.hit_rate = static_cast<double>(hits) / static_cast<double>(preds.size());
  return out;
}

TwoScaleResult two_scale_workflow(const IngestedSeries& series, double test_fraction, int tau_min, int tau_max) {
  const std::size_t n_train = train_length(series.values.size(), test_fraction);
  const std::span<const double> train(series.values.data(), n_train);
  TwoScaleResult out{search_second_scale(train, tau_min, tau_max), {}};
  out.forecast = evaluate_forecasts(ScaleModel::from(out.search.report), series, test_fraction);
  return out;
}

namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  for (const auto& item : split(s, ',')) {
    try {
      std::size_t used = 0;
      if constexpr (std::is_integral_v<T>)
        out.push_back(static_cast<T>(std::stoll(item, &used)));
      else
        out.push_back(static_cast<T>(std::stod(item, &used)));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw usage_error(std::string("bad value '") + item + "' in " + what);
    }
  }
  return out;
}

// Options shared by every subcommand that reads a univariate series.
struct SeriesArgs {
  std::string data;
  std::string column;
  bool difference = false;
  bool demean = false;

  void add(CLI::App* app, bool required = true) {
    auto* opt = app->add_option("--data", data, "CSV file with a header row");
    if (required) opt->required();
    app->add_option("--column", column, "Column name or 0-based index (default: first column not named t)");
    app->add_flag("--difference", difference, "First-difference the series");
    app->add_flag("--demean", demean, "Subtract the sample mean (after differencing)");
  }

  IngestedSeries load() const {
    std::optional<ColumnRef> ref;
    if (!column.empty()) ref = parse_column_ref(column);
    return ingest_csv(data, ref, {difference, demean});
  }
};

// Options controlling the thresholded fit.
struct FitArgs {
  std::string p = "auto";
  std::string zeta = "auto";
  int qmax = 10;
  std::string intervals = "auto";
  std::uint64_t seed = 0;

  void add(CLI::App* app) {
    app->add_option("--p", p, "AR order: auto or a positive integer")->capture_default_str();
    app->add_option("--zeta", zeta, "Threshold: auto (default grid), path (full solution path) or a value")
        ->capture_default_str();
    app->add_option("--qmax", qmax, "Largest admissible number of scales")->capture_default_str()->check(
        CLI::PositiveNumber);
    app->add_option("--intervals", intervals, "auto, all or random:M")->capture_default_str();
    app->add_option("--seed", seed, "Seed for random intervals")->capture_default_str();
  }

  FitOptions options() const {
    FitOptions o;
    if (p != "auto") {
      const auto v = parse_list<int>(p, "--p");
      if (v.size() != 1 || v[0] < 1) throw usage_error("--p must be auto or a positive integer");
      o.p = v[0];
    }
    if (zeta == "path") {
      o.zeta = ZetaChoice::solution_path();
    } else if (zeta != "auto") {
      const auto v = parse_list<double>(zeta, "--zeta");
      if (v.empty()) throw usage_error("--zeta needs a value");
      o.zeta = v.size() == 1 ? ZetaChoice::fixed(v[0]) : ZetaChoice::grid(v);
    }
    o.q_max = qmax;
    if (intervals == "all") {
      o.intervals = IntervalMode::all_pairs();
    } else if (intervals.rfind("random:", 0) == 0) {
      const auto m = parse_list<int>(intervals.substr(7), "--intervals");
      if (m.size() != 1 || m[0] < 1) throw usage_error("--intervals random:M needs M >= 1");
      o.intervals = IntervalMode::random(m[0], seed);
    } else if (intervals != "auto") {
      throw usage_error("--intervals must be auto, all or random:M");
    }
    o.interval_seed = seed;
    return o;
  }
};

void log_seed(std::uint64_t seed) { std::cerr << "seed: " << seed << '\n'; }

std::ostream& open_or_stdout(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty() || path == "-") return std::cout;
  holder = std::make_unique<std::ofstream>(path);
  detail::require(static_cast<bool>(*holder), errc::io, "cannot write '" + path + "'");
  return *holder;
}

InnovationSpec parse_innovation(const std::string& s, double sigma, std::uint64_t seed) {
  if (s == "gaussian") return InnovationSpec::gaussian(sigma, seed);
  if (s == "cauchy") return InnovationSpec::cauchy(seed);
  if (s.rfind("pareto:", 0) == 0) {
    const auto v = parse_list<double>(s.substr(7), "--innovation");
    if (v.size() != 1) throw usage_error("--innovation pareto:INDEX needs one index");
    return InnovationSpec::pareto(v[0], seed);
  }
  throw usage_error("--innovation must be gaussian, cauchy or pareto:INDEX");
}

// Model given as a preset name, a JSON file or explicit scales/coefficients.
struct ModelArgs {
  std::string preset;
  std::string json;
  std::string scales;
  std::string coeffs;

  void add(CLI::App* app) {
    app->add_option("--preset", preset, "Preset model (M1..M9, primed variants as M1')");
    app->add_option("--model", json, "Model JSON file");
    app->add_option("--scales", scales, "Comma-separated scales");
    app->add_option("--coeffs", coeffs, "Comma-separated coefficients");
  }

  bool given() const { return !preset.empty() || !json.empty() || !scales.empty(); }

  AmarModel load(std::size_t T) const {
    const int sources = !preset.empty() + !json.empty() + !scales.empty();
    if (sources != 1) throw usage_error("give exactly one of --preset, --model or --scales/--coeffs");
    if (!preset.empty()) return amar::preset(preset, T);
    if (!json.empty()) return amar_model_from_json(read_json_file(json));
    return AmarModel(parse_list<int>(scales, "--scales"), parse_list<double>(coeffs, "--coeffs"));
  }
};

void print_fit(std::ostream& os, const FitReport& r) {
  os << "chosen p:      " << r.chosen_p << '\n';
  os << "chosen zeta:   " << r.chosen_zeta << '\n';
  os << "scales (q=" << r.q_hat() << "):\n";
  os << "  " << std::setw(8) << "tau" << std::setw(16) << "alpha" << '\n';
  for (std::size_t k = 0; k < r.scales.size(); ++k)
    os << "  " << std::setw(8) << r.scales[k] << std::setw(16) << r.alpha[k] << '\n';
  os << "residual var:  " << r.residual_variance << '\n';
  os << "SIC:           " << r.sic << '\n';
}

void print_forecast(std::ostream& os, const ForecastSummary& f) {
  os << "train/test:    " << f.n_train << " / " << f.n_test << '\n';
  os << "MSPE:          " << f.mspe << '\n';
  os << "RMSPE:         " << f.rmspe << '\n';
  os << "hit rate:      " << f.hit_rate << '\n';
}

void write_predictions(const std::string& path, const ForecastSummary& f) {
  std::ofstream out(path);
  detail::require(static_cast<bool>(out), errc::io, "cannot write '" + path + "'");
  out << std::setprecision(17) << "t,actual,predicted\n";
  for (const auto& r : f.rows) out << r.t << ',' << r.actual << ',' << r.predicted << '\n';
}

// ---------------------------------------------------------------------------

struct SimulateCmd {
  ModelArgs model;
  std::size_t T = 500;
  int burn_in = -1;
  std::string innovation = "gaussian";
  double sigma = 1.0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  bool allow_nonstationary = false;

  void add(CLI::App& root, std::function<void()>& action) {
    auto* app = root.add_subcommand("simulate", "Simulate a sample path");
    model.add(app);
    app->add_option("--T", T, "Path length")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--burn-in", burn_in, "Discarded warm-up steps (default 1000 + 10 * max scale)");
    app->add_option("--innovation", innovation, "gaussian, cauchy or pareto:INDEX")->capture_default_str();
    app->add_option("--sigma", sigma, "Gaussian standard deviation")->capture_default_str();
    app->add_option("--seed", seed, "Innovation seed")->capture_default_str();
    app->add_option("--out", out, "Output file (default stdout)");
    app->add_option("--format", format, "csv (t,x) or plain")->check(CLI::IsMember({"csv", "plain"}))
        ->capture_default_str();
    app->add_flag("--allow-nonstationary", allow_nonstationary, "Skip the stationarity check");
    app->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() const {
    log_seed(seed);
    AmarModel m = model.load(T);
    m = m.with_innovation(parse_innovation(innovation, sigma, seed));
    const bool unit_root = !model.preset.empty() && preset_is_unit_root(model.preset);
    const auto x = simulate(m, T, {burn_in, allow_nonstationary || unit_root});
    std::unique_ptr<std::ofstream> holder;
    auto& os = open_or_stdout(out, holder);
    os << std::setprecision(17);
    if (format == "csv") os << "t,x\n";
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (format == "csv") os << (t + 1) << ',';
      os << x[t] << '\n';
    }
  }
};

struct FitCmd {
  SeriesArgs series;
  FitArgs fit;
  std::string scales;
  bool two_scale = false;
  int tau2_min = 2;
  int tau2_max = 251;
  std::string json;

  void add(CLI::App& root, std::function<void()>& action) {
    auto* app = root.add_subcommand("fit", "Estimate an AMAR model");
    series.add(app);
    fit.add(app);
    app->add_option("--scales", scales, "Skip detection and fit these scales");
    app->add_flag("--two-scale", two_scale, "Fix tau1 = 1 and search tau2 by RSS");
    app->add_option("--tau2-min", tau2_min, "Smallest tau2 candidate")->capture_default_str();
    app->add_option("--tau2-max", tau2_max, "Largest tau2 candidate")->capture_default_str();
    app->add_option("--json", json, "Write the fit report as JSON");
    app->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() const {
    const auto s = series.load();
    FitReport r;
    if (!scales.empty()) {
      r = fit_fixed_scales(s.values, parse_list<int>(scales, "--scales"));
    } else if (two_scale) {
      r = search_second_scale(s.values, tau2_min, tau2_max).report;
    } else {
      log_seed(fit.seed);
      r = amar_fit(s.values, fit.options());
    }
    std::cout << "series:        " << s.transform.column << " (T=" << s.values.size() << ")\n";
    print_fit(std::cout, r);
    if (!json.empty()) write_json_file(json, to_json(r));
  }
};

struct ForecastCmd {
  SeriesArgs series;
  FitArgs fit;
  std::string model;
  double test_fraction = 0.3;
  bool two_scale = false;
  std::string emit;

  void add(CLI::App& root, std::function<void()>& action) {
    auto* app = root.add_subcommand("forecast", "One-step rolling forecasts over a held-out tail");
    series.add(app);
    fit.add(app);
    app->add_option("--model", model, "Model or fit-report JSON (default: fit on the training part)");
    app->add_option("--test-fraction", test_fraction, "Share of the series held out")->capture_default_str();
    app->add_flag("--two-scale", two_scale, "Fit tau1 = 1 plus the best tau2 in 2..251 on the training part");
    app->add_option("--emit", emit, "Write t,actual,predicted CSV");
    app->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() const {
    const auto s = series.load();
    ForecastSummary f;
    if (!model.empty()) {
      f = evaluate_forecasts(scale_model_from_json(read_json_file(model)), s, test_fraction);
    } else if (two_scale) {
      const auto w = two_scale_workflow(s, test_fraction);
      std::cout << "tau2:          " << w.search.best_tau2 << '\n';
      print_fit(std::cout, w.search.report);
      f = w.forecast;
    } else {
      log_seed(fit.seed);
      const std::size_t n_train = train_length(s.values.size(), test_fraction);
      const auto r = amar_fit(std::span<const double>(s.values.data(), n_train), fit.options());
      print_fit(std::cout, r);
      f = evaluate_forecasts(ScaleModel::from(r), s, test_fraction);
    }
    print_forecast(std::cout, f);
    if (!emit.empty()) write_predictions(emit, f);
  }
};

struct AmvarCmd {
  std::string data;
  std::string columns;
  bool difference = false;
  bool demean = false;
  std::string scales = "auto";
  double test_fraction = 0.3;
  FitArgs fit;
  std::string json;

  void add(CLI::App& root, std::function<void()>& action) {
    auto* app = root.add_subcommand("amvar-fit", "Fit a vector model on shared scales");
    app->add_option("--data", data, "CSV with one column per component")->required();
    app->add_option("--columns", columns, "Comma-separated column names or indices (default: all but t)");
    app->add_flag("--difference", difference, "First-difference every component");
    app->add_flag("--demean", demean, "Subtract each component's mean");
    app->add_option("--scales", scales, "auto (union of per-component fits) or a list")->capture_default_str();
    app->add_option("--test-fraction", test_fraction, "Held-out share for RMSPE (0 disables)")
        ->capture_default_str();
    fit.add(app);
    app->add_option("--json", json, "Write the fitted model as JSON");
    app->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() const {
    std::vector<ColumnRef> refs;
    for (const auto& c : split(columns, ',')) refs.push_back(parse_column_ref(c));
    const auto m = ingest_csv_matrix(data, refs, {difference, demean});
    const Eigen::Index T = m.values.rows();
    const Eigen::Index n_train =
        test_fraction > 0.0 ? static_cast<Eigen::Index>(train_length(static_cast<std::size_t>(T), test_fraction)) : T;
    const Eigen::MatrixXd train = m.values.topRows(n_train);
    std::vector<int> sc;
    if (scales == "auto") {
      log_seed(fit.seed);
      sc = union_scale_selection(train, fit.options());
      if (sc.empty()) throw error(errc::infeasible_threshold, "no component has a detectable scale");
    } else {
      sc = parse_list<int>(scales, "--scales");
    }
    const auto f = amvar_fit_given_scales(train, sc);
    std::cout << "components:    ";
    for (const auto& n : m.names) std::cout << n << ' ';
    std::cout << "\nscales:        ";
    for (int s : sc) std::cout << s << ' ';
    std::cout << '\n';
    for (std::size_t k = 0; k < sc.size(); ++k)
      std::cout << "A[tau=" << sc[k] << "] =\n" << f.model.coeff_mats()[k] << '\n';
    std::cout << "residual cov =\n" << f.residual_cov << '\n';
    if (n_train < T) {
      Eigen::VectorXd sse = Eigen::VectorXd::Zero(m.values.cols());
      for (Eigen::Index t = n_train; t < T; ++t) {
        const Eigen::VectorXd pred = amvar_predict_next(f.model, m.values.topRows(t));
        sse += (m.values.row(t).transpose() - pred).cwiseAbs2();
      }
      for (Eigen::Index c = 0; c < m.values.cols(); ++c)
        std::cout << "RMSPE[" << m.names[static_cast<std::size_t>(c)]
                  << "] = " << std::sqrt(sse(c) / static_cast<double>(T - n_train)) << '\n';
    }
    if (!json.empty()) write_json_file(json, to_json(f, m.names));
  }
};

struct BenchCmd {
  std::string models = "M1";
  std::string Ts = "400";
  int reps = 200;
  std::uint64_t seed = 7;
  std::string out;
  FitArgs fit;
  std::string innovation;
  unsigned threads = 0;

  void add(CLI::App& root, std::function<void()>& action) {
    auto* app = root.add_subcommand("bench", "Monte Carlo benchmark over presets");
    app->add_option("--models", models, "Comma-separated preset names")->capture_default_str();
    app->add_option("--T", Ts, "Comma-separated sample sizes")->capture_default_str();
    app->add_option("--reps", reps, "Replications per cell")->capture_default_str();
    app->add_option("--seed", seed, "Base seed (replication r uses seed XOR r)")->capture_default_str();
    app->add_option("--out", out, "CSV output (default stdout)");
    app->add_option("--p", fit.p, "AR order: auto or a positive integer")->capture_default_str();
    app->add_option("--zeta", fit.zeta, "Threshold: auto, path or a value")->capture_default_str();
    app->add_option("--qmax", fit.qmax, "Largest admissible number of scales")->capture_default_str();
    app->add_option("--intervals", fit.intervals, "auto, all or random:M")->capture_default_str();
    app->add_option("--innovation", innovation, "Override innovations: gaussian, cauchy or pareto:INDEX");
    app->add_option("--threads", threads, "Worker threads (default AMAR_THREADS or all cores)");
    app->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() const {
    log_seed(seed);
    BenchOptions o;
    o.fit = fit.options();
    if (!innovation.empty()) o.innovation = parse_innovation(innovation, 1.0, 0);
    o.threads = threads;
    const auto names = split(models, ',');
    const auto sizes = parse_list<std::size_t>(Ts, "--T");
    const auto rows = run_benchmark(names, sizes, reps, seed, o);
    std::unique_ptr<std::ofstream> holder;
    write_benchmark_csv(open_or_stdout(out, holder), rows);
  }
};

struct PlotCmd {
  std::string kind;
  std::string out;
  SeriesArgs series;
  ModelArgs model;
  std::size_t T = 500;
  std::uint64_t seed = 1;
  std::string report;
  double alpha1 = 0.7;
  int tau1 = 10;
  int points = 512;

  void add(CLI::App& root, std::function<void()>& action) {
    auto* app = root.add_subcommand("plotdata", "Write tidy CSV for plotting");
    app->add_option("--kind", kind, "path, coeffs or spectral")
        ->required()
        ->check(CLI::IsMember({"path", "coeffs", "spectral"}));
    app->add_option("--out", out, "Output CSV")->required();
    series.add(app, false);
    model.add(app);
    app->add_option("--T", T, "Length when simulating a path")->capture_default_str();
    app->add_option("--seed", seed, "Seed when simulating a path")->capture_default_str();
    app->add_option("--report", report, "Fit-report JSON for coeffs");
    app->add_option("--alpha1", alpha1, "Coefficient for spectral")->capture_default_str();
    app->add_option("--tau1", tau1, "Scale for spectral")->capture_default_str();
    app->add_option("--points", points, "Frequencies for spectral")->capture_default_str();
    app->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() const {
    if (kind == "path") {
      std::vector<double> x;
      if (!series.data.empty()) {
        x = series.load().values;
      } else if (model.given()) {
        log_seed(seed);
        AmarModel m = model.load(T);
        m = m.with_innovation(m.innovation().with_seed(seed));
        const bool unit_root = !model.preset.empty() && preset_is_unit_root(model.preset);
        x = simulate(m, T, {-1, unit_root});
      } else {
        throw usage_error("path plot needs --data or a model");
      }
      emit_plot_data(PlotKind::path, x, out);
    } else if (kind == "coeffs") {
      if (report.empty()) throw usage_error("coeffs plot needs --report");
      emit_plot_data(PlotKind::coeffs, fit_report_from_json(read_json_file(report)), out);
    } else {
      emit_plot_data(PlotKind::spectral, SpectralPayload{alpha1, tau1, points}, out);
    }
  }
};

struct StationarityCmd {
  ModelArgs model;
  std::string beta;
  double margin = 0.0;
  std::size_t T = 1000;

  void add(CLI::App& root, std::function<void()>& action) {
    auto* app = root.add_subcommand("stationarity", "Check the sufficient and exact stationarity conditions");
    model.add(app);
    app->add_option("--beta", beta, "Comma-separated AR coefficients instead of a scale model");
    app->add_option("--margin", margin, "Required root-modulus margin")->capture_default_str();
    app->add_option("--T", T, "Sample size for T-dependent presets")->capture_default_str();
    app->callback([this, &action] { action = [this] { run(); }; });
  }

  void run() const {
    std::optional<ArModel> ar;
    if (!beta.empty()) {
      ar = ArModel(parse_list<double>(beta, "--beta"));
    } else {
      const AmarModel m = model.load(T);
      std::cout << "sufficient:    " << (is_stationary_sufficient(m) ? "yes" : "no") << '\n';
      ar = amar_to_ar(m, m.max_scale());
    }
    const auto check = is_stationary_exact(*ar, margin);
    std::cout << "exact:         " << (check.stationary ? "yes" : "no") << '\n';
    std::cout << "min |root|:    " << check.min_root_modulus << '\n';
    if (check.ill_conditioned) std::cout << "warning:       root computation is ill-conditioned\n";
  }
};

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Adaptive multiscale autoregression toolkit", "amar"};
  app.set_config("--config", "", "Read options from a key=value file (flags override it)");
  app.require_subcommand(1);
  std::function<void()> action;
  SimulateCmd simulate_cmd;
  FitCmd fit_cmd;
  ForecastCmd forecast_cmd;
  AmvarCmd amvar_cmd;
  BenchCmd bench_cmd;
  PlotCmd plot_cmd;
  StationarityCmd stationarity_cmd;
  simulate_cmd.add(app, action);
  fit_cmd.add(app, action);
  forecast_cmd.add(app, action);
  amvar_cmd.add(app, action);
  bench_cmd.add(app, action);
  plot_cmd.add(app, action);
  stationarity_cmd.add(app, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }
  try {
    if (action) action();
    return ok;
  } catch (const usage_error& e) {
    std::cerr << "amar: " << e.what() << '\n';
    return usage;
  } catch (const error& e) {
    std::cerr << "amar: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "amar: " << e.what() << '\n';
    return numerical;
  }
}

}  // namespace amar::cli
