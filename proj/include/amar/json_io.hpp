#pragma once

// JSON forms of models and fit reports (nlohmann::json, insertion-ordered).

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amar/amvar.hpp"
#include "amar/error.hpp"
#include "amar/estimator.hpp"
#include "amar/forecaster.hpp"
#include "amar/timeseries_core.hpp"

namespace amar {

using ojson = nlohmann::ordered_json;

namespace detail {
inline ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

inline double number_or_nan(const ojson& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

template <typename F>
auto parse_guard(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse, what + ": " + e.what());
  }
}
}  // namespace detail

/// {"scales":[...],"coeffs":[...],"innovation":{...},"seed":...}
inline ojson to_json(const AmarModel& m) {
  ojson innov;
  const auto& spec = m.innovation();
  innov["kind"] = to_string(spec.kind());
  if (spec.kind() == InnovationSpec::Kind::gaussian) innov["sigma"] = spec.sigma();
  if (spec.kind() == InnovationSpec::Kind::pareto) innov["index"] = spec.tail_index();
  ojson j;
  j["scales"] = m.scales();
  j["coeffs"] = m.coeffs();
  j["innovation"] = innov;
  j["seed"] = spec.seed();
  return j;
}

inline InnovationSpec innovation_from_json(const ojson& j, std::uint64_t seed) {
  const std::string kind = j.value("kind", "gaussian");
  if (kind == "gaussian") return InnovationSpec::gaussian(j.value("sigma", 1.0), seed);
  if (kind == "pareto") return InnovationSpec::pareto(j.at("index").get<double>(), seed);
  if (kind == "cauchy") return InnovationSpec::cauchy(seed);
  detail::fail(errc::parse, "unknown innovation kind '" + kind + "'");
}

inline AmarModel amar_model_from_json(const ojson& j) {
  return detail::parse_guard("AMAR model JSON", [&] {
    const auto seed = j.value("seed", std::uint64_t{0});
    const InnovationSpec spec =
        j.contains("innovation") ? innovation_from_json(j.at("innovation"), seed) : InnovationSpec::gaussian(1.0, seed);
    return AmarModel(j.at("scales").get<std::vector<int>>(), j.at("coeffs").get<std::vector<double>>(), spec);
  });
}

inline ojson to_json(const FitReport& r) {
  ojson j;
  j["scales"] = r.scales;
  j["alpha"] = r.alpha;
  j["beta_unconstrained"] = r.beta_unconstrained.coeffs();
  j["beta_constrained"] = r.beta_constrained.coeffs();
  j["chosen_zeta"] = r.chosen_zeta;
  j["chosen_p"] = r.chosen_p;
  ojson trace = ojson::array();
  for (const auto& e : r.sic_trace)
    trace.push_back({{"zeta", e.zeta}, {"p", e.p}, {"q_hat", e.q_hat}, {"sic", detail::number_or_null(e.sic)}});
  j["sic_trace"] = std::move(trace);
  j["residual_variance"] = r.residual_variance;
  return j;
}

inline FitReport fit_report_from_json(const ojson& j) {
  return detail::parse_guard("fit report JSON", [&] {
    FitReport r;
    r.scales = j.at("scales").get<std::vector<int>>();
    r.alpha = j.at("alpha").get<std::vector<double>>();
    r.beta_unconstrained = ArModel(j.at("beta_unconstrained").get<std::vector<double>>());
    r.beta_constrained = ArModel(j.at("beta_constrained").get<std::vector<double>>());
    r.chosen_zeta = j.at("chosen_zeta").get<double>();
    r.chosen_p = j.at("chosen_p").get<int>();
    for (const auto& e : j.value("sic_trace", ojson::array()))
      r.sic_trace.push_back({e.at("zeta").get<double>(), e.at("p").get<int>(), e.at("q_hat").get<int>(),
                             detail::number_or_nan(e.at("sic"))});
    r.residual_variance = j.at("residual_variance").get<double>();
    detail::require(r.scales.size() == r.alpha.size(), errc::parse, "scales and alpha differ in length");
    return r;
  });
}

/// Accepts either a fit report ("alpha") or a model ("coeffs").
inline ScaleModel scale_model_from_json(const ojson& j) {
  return detail::parse_guard("model JSON", [&] {
    ScaleModel m;
    m.scales = j.at("scales").get<std::vector<int>>();
    m.alpha = j.contains("alpha") ? j.at("alpha").get<std::vector<double>>() : j.at("coeffs").get<std::vector<double>>();
    detail::require(m.scales.size() == m.alpha.size(), errc::parse, "scales and coefficients differ in length");
    detail::require(std::is_sorted(m.scales.begin(), m.scales.end()), errc::parse, "scales must be sorted");
    return m;
  });
}

inline ojson to_json(const AmvarFit& fit, const std::vector<std::string>& names = {}) {
  ojson j;
  j["scales"] = fit.model.scales();
  j["d"] = fit.model.d();
  if (!names.empty()) j["components"] = names;
  ojson mats = ojson::array();
  for (const auto& A : fit.model.coeff_mats()) {
    ojson rows = ojson::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      std::vector<double> row(static_cast<std::size_t>(A.cols()));
      for (Eigen::Index c = 0; c < A.cols(); ++c) row[static_cast<std::size_t>(c)] = A(i, c);
      rows.push_back(row);
    }
    mats.push_back(std::move(rows));
  }
  j["coeff_mats"] = std::move(mats);
  ojson cov = ojson::array();
  for (Eigen::Index i = 0; i < fit.residual_cov.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(fit.residual_cov.cols()));
    for (Eigen::Index c = 0; c < fit.residual_cov.cols(); ++c) row[static_cast<std::size_t>(c)] = fit.residual_cov(i, c);
    cov.push_back(row);
  }
  j["residual_cov"] = std::move(cov);
  return j;
}

inline ojson read_json_file(const std::string& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), errc::io, "cannot open '" + path + "'");
  try {
    return ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    detail::fail(errc::parse, "'" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const ojson& j) {
  std::ofstream out(path);
  detail::require(static_cast<bool>(out), errc::io, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace amar
