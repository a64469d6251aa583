#pragma once

// Vector extension: each scale carries a d x d matrix applied to the vector
// of per-component running means,
//
//     X_t = sum_k A_k * mean(X_{t-1}, ..., X_{t-tau_k}) + eps_t.
//
// Series are T x d matrices, one row per time point.

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "amar/error.hpp"
#include "amar/estimator.hpp"

namespace amar {

class AmvarModel {
 public:
  AmvarModel(std::vector<int> scales, std::vector<Eigen::MatrixXd> coeff_mats)
      : scales_(std::move(scales)), mats_(std::move(coeff_mats)) {
    detail::require(!scales_.empty(), errc::invalid_argument, "AMVAR model needs at least one scale");
    detail::require(scales_.size() == mats_.size(), errc::invalid_argument,
                    "one coefficient matrix per scale is required");
    d_ = static_cast<int>(mats_.front().rows());
    detail::require(d_ >= 1, errc::invalid_argument, "dimension must be >= 1");
    for (std::size_t k = 0; k < scales_.size(); ++k) {
      detail::require(scales_[k] >= 1 && (k == 0 || scales_[k] > scales_[k - 1]), errc::invalid_argument,
                      "scales must be positive and strictly increasing");
      detail::require(mats_[k].rows() == d_ && mats_[k].cols() == d_, errc::invalid_argument,
                      "coefficient matrices must all be d x d");
    }
  }

  const std::vector<int>& scales() const noexcept { return scales_; }
  const std::vector<Eigen::MatrixXd>& coeff_mats() const noexcept { return mats_; }
  int d() const noexcept { return d_; }
  int max_scale() const noexcept { return scales_.back(); }

 private:
  std::vector<int> scales_;
  std::vector<Eigen::MatrixXd> mats_;
  int d_ = 0;
};

struct AmvarFit {
  AmvarModel model;
  Eigen::MatrixXd residual_cov;
  std::size_t rows = 0;
};

namespace detail {

/// Column j of the design: scale index j / d, component j % d.
inline std::string amvar_regressor_name(const std::vector<int>& scales, int d, Eigen::Index j) {
  const auto k = static_cast<std::size_t>(j / d);
  return "mean(scale " + std::to_string(scales[k]) + ", component " + std::to_string(j % d) + ")";
}

[[noreturn]] inline void report_collinear(const Eigen::MatrixXd& A, const std::vector<int>& scales, int d) {
  double worst = -1.0;
  Eigen::Index wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < A.cols(); ++i) {
    const double ni = A.col(i).norm();
    if (ni == 0.0) fail(errc::singular_design, "regressor " + amvar_regressor_name(scales, d, i) + " is identically zero");
    for (Eigen::Index j = i + 1; j < A.cols(); ++j) {
      const double c = std::abs(A.col(i).dot(A.col(j))) / (ni * A.col(j).norm());
      if (c > worst) {
        worst = c;
        wi = i;
        wj = j;
      }
    }
  }
  fail(errc::singular_design, "collinear regressors " + amvar_regressor_name(scales, d, wi) + " and " +
                                  amvar_regressor_name(scales, d, wj));
}

}  // namespace detail

/// Equation-by-equation OLS on all d*q running-mean regressors, rows
/// t = tau_max+1..T.
inline AmvarFit amvar_fit_given_scales(const Eigen::MatrixXd& X, std::vector<int> scales) {
  detail::require(!scales.empty(), errc::invalid_argument, "need at least one scale");
  std::sort(scales.begin(), scales.end());
  const auto T = static_cast<std::size_t>(X.rows());
  const int d = static_cast<int>(X.cols());
  detail::require(d >= 1, errc::invalid_argument, "series has no components");
  const int q = static_cast<int>(scales.size());
  const int tau_max = scales.back();
  detail::require(scales.front() >= 1, errc::invalid_argument, "scales must be >= 1");
  detail::require(T > static_cast<std::size_t>(2 * d * q + tau_max), errc::insufficient_data,
                  "AMVAR fit needs T > 2*d*q + tau_max");
  for (int k = 1; k < q; ++k) {
    if (scales[static_cast<std::size_t>(k)] == scales[static_cast<std::size_t>(k - 1)])
      detail::fail(errc::singular_design, "scale " + std::to_string(scales[static_cast<std::size_t>(k)]) +
                                              " is repeated; its regressors are collinear");
  }

  std::vector<std::vector<long double>> prefix;
  prefix.reserve(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) {
    const Eigen::VectorXd col = X.col(c);
    prefix.push_back(detail::long_prefix(std::span<const double>(col.data(), static_cast<std::size_t>(col.size()))));
  }

  const auto n = static_cast<Eigen::Index>(T - static_cast<std::size_t>(tau_max));
  Eigen::MatrixXd A(n, d * q);
  Eigen::MatrixXd Y(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t t = static_cast<std::size_t>(i) + static_cast<std::size_t>(tau_max) + 1;
    Y.row(i) = X.row(static_cast<Eigen::Index>(t - 1));
    for (int k = 0; k < q; ++k)
      for (int c = 0; c < d; ++c)
        A(i, k * d + c) = detail::running_mean(prefix[static_cast<std::size_t>(c)], t, scales[static_cast<std::size_t>(k)]);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < A.cols()) detail::report_collinear(A, scales, d);
  const Eigen::MatrixXd B = qr.solve(Y);  // (d*q) x d, column i is equation i
  const Eigen::MatrixXd resid = Y - A * B;

  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(static_cast<std::size_t>(q));
  for (int k = 0; k < q; ++k) mats.push_back(B.block(k * d, 0, d, d).transpose());
  return {AmvarModel(scales, std::move(mats)), resid.transpose() * resid / static_cast<double>(n),
          static_cast<std::size_t>(n)};
}

/// Matrix-weighted sum of the per-scale running-mean vectors of the last rows.
inline Eigen::VectorXd amvar_predict_next(const AmvarModel& model, const Eigen::MatrixXd& history) {
  detail::require(history.cols() == model.d(), errc::invalid_argument, "history dimension mismatch");
  detail::require(history.rows() >= model.max_scale(), errc::insufficient_history,
                  "prediction needs " + std::to_string(model.max_scale()) + " past rows");
  const Eigen::Index n = history.rows();
  Eigen::VectorXd window = Eigen::VectorXd::Zero(model.d());
  Eigen::VectorXd pred = Eigen::VectorXd::Zero(model.d());
  int summed = 0;
  for (std::size_t k = 0; k < model.scales().size(); ++k) {
    for (; summed < model.scales()[k]; ++summed) window += history.row(n - 1 - summed).transpose();
    pred += model.coeff_mats()[k] * (window / model.scales()[k]);
  }
  return pred;
}

/// Sorted union of the scales detected by a univariate fit of each component.
inline std::vector<int> union_scale_selection(const Eigen::MatrixXd& X, const FitOptions& opts = {}) {
  detail::require(X.cols() >= 2, errc::invalid_argument, "union selection needs d >= 2");
  std::set<int> all;
  for (Eigen::Index c = 0; c < X.cols(); ++c) {
    const Eigen::VectorXd col = X.col(c);
    const auto report = amar_fit(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())), opts);
    all.insert(report.scales.begin(), report.scales.end());
  }
  return {all.begin(), all.end()};
}

}  // namespace amar
