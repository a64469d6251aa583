#pragma once

// Model types for adaptive multiscale autoregression and the exact mapping
// between the multiscale form
//
//     X_t = sum_k alpha_k * (X_{t-1} + ... + X_{t-tau_k}) / tau_k + eps_t
//
// and its dense AR(p) form X_t = sum_j beta_j X_{t-j} + eps_t, where
// beta_j = sum_{k : tau_k >= j} alpha_k / tau_k.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "amar/error.hpp"

namespace amar {

class InnovationSpec {
 public:
  enum class Kind { gaussian, pareto, cauchy };

  static InnovationSpec gaussian(double sigma = 1.0, std::uint64_t seed = 0) {
    detail::require(sigma > 0.0 && std::isfinite(sigma), errc::invalid_argument,
                    "gaussian innovation requires sigma > 0");
    return InnovationSpec(Kind::gaussian, sigma, 2.0, seed);
  }

  /// Symmetric Pareto: P(|Z| > z) = z^{-index} for z >= 1.
  static InnovationSpec pareto(double tail_index, std::uint64_t seed = 0) {
    detail::require(tail_index > 0.0 && tail_index != 2.0 && std::isfinite(tail_index),
                    errc::invalid_argument, "tail index must be > 0 and != 2");
    return InnovationSpec(Kind::pareto, 1.0, tail_index, seed);
  }

  /// Standard Cauchy (regularly varying with index 1).
  static InnovationSpec cauchy(std::uint64_t seed = 0) {
    return InnovationSpec(Kind::cauchy, 1.0, 1.0, seed);
  }

  Kind kind() const noexcept { return kind_; }
  double sigma() const noexcept { return sigma_; }
  double tail_index() const noexcept { return tail_index_; }
  std::uint64_t seed() const noexcept { return seed_; }

  InnovationSpec with_seed(std::uint64_t seed) const {
    InnovationSpec copy = *this;
    copy.seed_ = seed;
    return copy;
  }

  friend bool operator==(const InnovationSpec&, const InnovationSpec&) = default;

 private:
  InnovationSpec(Kind kind, double sigma, double tail_index, std::uint64_t seed)
      : kind_(kind), sigma_(sigma), tail_index_(tail_index), seed_(seed) {}

  Kind kind_;
  double sigma_;
  double tail_index_;
  std::uint64_t seed_;
};

inline const char* to_string(InnovationSpec::Kind kind) noexcept {
  switch (kind) {
    case InnovationSpec::Kind::gaussian: return "gaussian";
    case InnovationSpec::Kind::pareto: return "pareto";
    case InnovationSpec::Kind::cauchy: return "cauchy";
  }
  return "unknown";
}

/// Multiscale model: strictly increasing scales with nonzero coefficients.
class AmarModel {
 public:
  AmarModel(std::vector<int> scales, std::vector<double> coeffs,
            InnovationSpec innovation = InnovationSpec::gaussian())
      : scales_(std::move(scales)), coeffs_(std::move(coeffs)), innovation_(innovation) {
    detail::require(!scales_.empty(), errc::invalid_argument, "AMAR model needs at least one scale");
    detail::require(scales_.size() == coeffs_.size(), errc::invalid_argument,
                    "scales and coefficients differ in length");
    for (std::size_t k = 0; k < scales_.size(); ++k) {
      detail::require(scales_[k] >= 1, errc::invalid_argument, "scales must be >= 1");
      detail::require(k == 0 || scales_[k] > scales_[k - 1], errc::invalid_argument,
                      "scales must be strictly increasing");
      detail::require(coeffs_[k] != 0.0 && std::isfinite(coeffs_[k]), errc::invalid_argument,
                      "scale coefficients must be finite and nonzero");
    }
  }

  const std::vector<int>& scales() const noexcept { return scales_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  const InnovationSpec& innovation() const noexcept { return innovation_; }
  std::size_t q() const noexcept { return scales_.size(); }
  int max_scale() const noexcept { return scales_.back(); }

  AmarModel with_innovation(InnovationSpec spec) const {
    AmarModel copy = *this;
    copy.innovation_ = spec;
    return copy;
  }

  friend bool operator==(const AmarModel&, const AmarModel&) = default;

 private:
  std::vector<int> scales_;
  std::vector<double> coeffs_;
  InnovationSpec innovation_;
};

/// Dense AR(p) coefficients beta_1..beta_p (stored 0-based).
class ArModel {
 public:
  explicit ArModel(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    detail::require(!coeffs_.empty(), errc::invalid_argument, "AR model needs p >= 1");
  }

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  std::size_t p() const noexcept { return coeffs_.size(); }
  /// 1-based access, beta_j.
  double beta(std::size_t j) const { return coeffs_.at(j - 1); }

  friend bool operator==(const ArModel&, const ArModel&) = default;

 private:
  std::vector<double> coeffs_;
};

/// b(z) = 1 - sum_j beta_j z^j.
class CharPolynomial {
 public:
  explicit CharPolynomial(const ArModel& ar) : c_(ar.p() + 1) {
    c_[0] = 1.0;
    for (std::size_t j = 1; j <= ar.p(); ++j) c_[j] = -ar.beta(j);
  }

  /// Coefficients of z^0 .. z^p; c[0] == 1.
  const std::vector<double>& coefficients() const noexcept { return c_; }

  std::complex<double> operator()(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

 private:
  std::vector<double> c_;
};

/// beta_j = sum over tau_k >= j of alpha_k / tau_k, zero-padded to length p.
inline ArModel amar_to_ar(const AmarModel& model, int p) {
  detail::require(p >= model.max_scale(), errc::invalid_order,
                  "AR order " + std::to_string(p) + " is below the largest scale " +
                      std::to_string(model.max_scale()));
  const auto& tau = model.scales();
  const auto& alpha = model.coeffs();
  std::vector<double> beta(static_cast<std::size_t>(p), 0.0);
  // Accumulate from the largest scale down so every lag in a run sees the
  // same floating-point sum.
  double acc = 0.0;
  std::size_t k = tau.size();
  for (int j = model.max_scale(); j >= 1; --j) {
    while (k > 0 && tau[k - 1] >= j) {
      acc += alpha[k - 1] / tau[k - 1];
      --k;
    }
    beta[static_cast<std::size_t>(j - 1)] = acc;
  }
  return ArModel(std::move(beta));
}

/// Inverse of `amar_to_ar`: runs of equal coefficients (within 1e-9 of the
/// largest |beta|) become scales at their right ends. A trailing run equal to
/// zero is not a scale.
inline AmarModel ar_to_amar(const ArModel& ar, InnovationSpec innovation = InnovationSpec::gaussian()) {
  const auto& beta = ar.coeffs();
  double scale = 0.0;
  for (double b : beta) {
    detail::require(std::isfinite(b), errc::not_representable, "non-finite AR coefficient");
    scale = std::max(scale, std::abs(b));
  }
  detail::require(scale > 0.0, errc::not_representable,
                  "all-zero AR coefficients have no multiscale representation");
  const double tol = 1e-9 * scale;
  const auto same = [tol](double a, double b) { return std::abs(a - b) <= tol; };

  // Right ends of runs, with the implicit beta_{p+1} = 0 closing the last one.
  std::vector<int> ends;
  std::vector<double> levels;
  const std::size_t p = beta.size();
  for (std::size_t j = 0; j < p; ++j) {
    const double next = (j + 1 < p) ? beta[j + 1] : 0.0;
    if (!same(beta[j], next)) {
      ends.push_back(static_cast<int>(j + 1));
      levels.push_back(beta[j]);
    }
  }
  std::vector<double> alpha(ends.size());
  for (std::size_t k = 0; k < ends.size(); ++k) {
    const double next_level = (k + 1 < ends.size()) ? levels[k + 1] : 0.0;
    alpha[k] = ends[k] * (levels[k] - next_level);
  }
  return AmarModel(std::move(ends), std::move(alpha), innovation);
}

/// Sufficient condition for a causal stationary solution: sum |alpha_k| < 1.
/// Also necessary when every alpha_k >= 0.
inline bool is_stationary_sufficient(const AmarModel& model) noexcept {
  double s = 0.0;
  for (double a : model.coeffs()) s += std::abs(a);
  return s < 1.0;
}

struct StationarityCheck {
  bool stationary = false;
  /// Smallest modulus among the roots of b(z); +inf when b is constant.
  double min_root_modulus = std::numeric_limits<double>::infinity();
  /// Set when the eigen-decomposition is unreliable or the decision sits
  /// within round-off of the boundary.
  bool ill_conditioned = false;

  explicit operator bool() const noexcept { return stationary; }
};

/// Exact root test: all roots of b(z) lie outside the circle of radius
/// 1 + margin. Roots are reciprocals of the companion-matrix eigenvalues.
inline StationarityCheck is_stationary_exact(const ArModel& ar, double margin = 0.0) {
  detail::require(margin >= 0.0, errc::invalid_argument, "margin must be >= 0");
  const auto& beta = ar.coeffs();
  std::size_t p = beta.size();
  while (p > 0 && beta[p - 1] == 0.0) --p;  // zero leading terms put roots at infinity

  StationarityCheck out;
  if (p == 0) {
    out.stationary = true;
    return out;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                                    static_cast<Eigen::Index>(p));
  for (std::size_t j = 0; j < p; ++j) companion(0, static_cast<Eigen::Index>(j)) = beta[j];
  for (std::size_t i = 1; i < p; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    out.ill_conditioned = true;
    out.min_root_modulus = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double spectral_radius = 0.0;
  for (const auto& lambda : solver.eigenvalues()) spectral_radius = std::max(spectral_radius, std::abs(lambda));
  out.min_root_modulus = spectral_radius > 0.0 ? 1.0 / spectral_radius : std::numeric_limits<double>::infinity();
  const double boundary = spectral_radius * (1.0 + margin);
  out.stationary = boundary < 1.0;
  out.ill_conditioned = p > 500 || !std::isfinite(spectral_radius) ||
                        std::abs(boundary - 1.0) < 1e-10 * static_cast<double>(p);
  return out;
}

/// Spectral density of a single-scale model with unit innovation variance,
/// |1 - (alpha/tau) e^{-2 pi i f} (1 - e^{-2 pi i f tau}) / (1 - e^{-2 pi i f})|^{-2}.
inline double spectral_density_single_scale(double alpha1, int tau1, double f) {
  detail::require(tau1 >= 1, errc::invalid_argument, "scale must be >= 1");
  detail::require(f > -0.5 && f < 0.5, errc::domain, "frequency must lie in (-1/2, 1/2)");
  using cd = std::complex<double>;
  cd kernel;
  if (std::abs(f) < 1e-12) {
    kernel = static_cast<double>(tau1);
  } else {
    const cd w = std::polar(1.0, -2.0 * std::numbers::pi * f);
    const cd wt = std::polar(1.0, -2.0 * std::numbers::pi * f * tau1);
    kernel = w * (1.0 - wt) / (1.0 - w);
  }
  const double mod = std::abs(1.0 - (alpha1 / tau1) * kernel);
  return 1.0 / (mod * mod);
}

/// Multiscale form of the seasonal AR (1 - Phi B^S)(1 - phi B) X_t = eps_t.
/// For S = 12 this gives scales (1, 11, 12, 13).
inline AmarModel seasonal_to_amar(double phi1, double Phi1, int S = 12,
                                  InnovationSpec innovation = InnovationSpec::gaussian()) {
  detail::require(S >= 1, errc::invalid_argument, "season length must be >= 1");
  detail::require(phi1 != 0.0 && Phi1 != 0.0, errc::degenerate_parameter,
                  "phi1 and Phi1 must both be nonzero; construct the model directly otherwise");
  std::vector<double> beta(static_cast<std::size_t>(S) + 1, 0.0);
  beta[0] += phi1;
  beta[static_cast<std::size_t>(S - 1)] += Phi1;
  beta[static_cast<std::size_t>(S)] -= phi1 * Phi1;
  return ar_to_amar(ArModel(std::move(beta)), innovation);
}

}  // namespace amar
