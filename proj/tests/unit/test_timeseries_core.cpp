#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "amar/timeseries_core.hpp"

using namespace amar;

namespace {

// beta_j straight from the definition: sum over k with tau_k >= j of alpha_k / tau_k.
std::vector<double> beta_oracle(const std::vector<int>& tau, const std::vector<double>& alpha, int p) {
  std::vector<double> beta(static_cast<std::size_t>(p), 0.0);
  for (int j = 1; j <= p; ++j)
    for (std::size_t k = 0; k < tau.size(); ++k)
      if (tau[k] >= j) beta[static_cast<std::size_t>(j - 1)] += alpha[k] / tau[k];
  return beta;
}

void expect_beta(const ArModel& got, const std::vector<double>& want, double tol = 1e-12) {
  ASSERT_EQ(got.p(), want.size());
  for (std::size_t j = 0; j < want.size(); ++j) EXPECT_NEAR(got.coeffs()[j], want[j], tol) << "lag " << j + 1;
}

AmarModel random_model(std::mt19937_64& gen, bool nonnegative, double total) {
  std::uniform_int_distribution<int> qd(1, 4), step(1, 6);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const int q = qd(gen);
  std::vector<int> tau;
  std::vector<double> alpha;
  int t = 0;
  double s = 0.0;
  for (int k = 0; k < q; ++k) {
    t += step(gen);
    tau.push_back(t);
    double a = u(gen);
    if (!nonnegative && (gen() & 1)) a = -a;
    alpha.push_back(a);
    s += std::abs(a);
  }
  for (double& a : alpha) a *= total / s;
  return AmarModel(tau, alpha);
}

}  // namespace

TEST(AmarModel, RejectsInvalidParameters) {
  EXPECT_THROW(AmarModel({}, {}), error);
  EXPECT_THROW(AmarModel({1, 3}, {0.3}), error);
  EXPECT_THROW(AmarModel({3, 1}, {0.3, 0.6}), error);
  EXPECT_THROW(AmarModel({1, 1}, {0.3, 0.6}), error);
  EXPECT_THROW(AmarModel({0, 2}, {0.3, 0.6}), error);
  EXPECT_THROW(AmarModel({1, 3}, {0.3, 0.0}), error);
  EXPECT_THROW(ArModel(std::vector<double>{}), error);
}

TEST(InnovationSpec, RejectsInvalidParameters) {
  EXPECT_THROW(InnovationSpec::gaussian(0.0), error);
  EXPECT_THROW(InnovationSpec::gaussian(-1.0), error);
  EXPECT_THROW(InnovationSpec::pareto(2.0), error);
  EXPECT_THROW(InnovationSpec::pareto(0.0), error);
  EXPECT_NO_THROW(InnovationSpec::pareto(3.0));
  EXPECT_NO_THROW(InnovationSpec::pareto(1.5));
}

TEST(AmarToAr, ReferenceExamples) {
  expect_beta(amar_to_ar(AmarModel({1, 3}, {0.3, 0.6}), 3), {0.5, 0.2, 0.2});
  expect_beta(amar_to_ar(AmarModel({2, 5}, {1.9, -1}), 5), {0.75, 0.75, -0.2, -0.2, -0.2});
  expect_beta(amar_to_ar(AmarModel({1}, {0.9}), 1), {0.9});
  expect_beta(amar_to_ar(AmarModel({10}, {0.9}), 10), std::vector<double>(10, 0.09));
}

TEST(AmarToAr, PadsWithZerosAndRejectsShortOrder) {
  expect_beta(amar_to_ar(AmarModel({1, 3}, {0.3, 0.6}), 6), {0.5, 0.2, 0.2, 0, 0, 0});
  try {
    amar_to_ar(AmarModel({1, 3}, {0.3, 0.6}), 2);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_order);
  }
}

TEST(AmarToAr, MatchesDefinitionOnRandomModels) {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 500; ++rep) {
    const auto m = random_model(gen, false, 1.7);
    const int p = m.max_scale() + static_cast<int>(gen() % 5);
    expect_beta(amar_to_ar(m, p), beta_oracle(m.scales(), m.coeffs(), p), 1e-14);
  }
}

TEST(AmarToAr, RunsEndExactlyAtScales) {
  std::mt19937_64 gen(12);
  for (int rep = 0; rep < 200; ++rep) {
    const auto m = random_model(gen, false, 1.0);
    const auto beta = amar_to_ar(m, m.max_scale() + 2).coeffs();
    std::vector<int> ends;
    for (std::size_t j = 0; j + 1 < beta.size(); ++j)
      if (beta[j] != beta[j + 1]) ends.push_back(static_cast<int>(j + 1));
    EXPECT_EQ(ends, m.scales());
  }
}

TEST(ArToAmar, ReferenceExamples) {
  const auto m1 = ar_to_amar(ArModel({0.5, 0.2, 0.2}));
  EXPECT_EQ(m1.scales(), (std::vector<int>{1, 3}));
  EXPECT_NEAR(m1.coeffs()[0], 0.3, 1e-12);
  EXPECT_NEAR(m1.coeffs()[1], 0.6, 1e-12);

  const auto ar1 = ar_to_amar(ArModel({0.9}));
  EXPECT_EQ(ar1.scales(), std::vector<int>{1});
  EXPECT_NEAR(ar1.coeffs()[0], 0.9, 1e-12);

  const auto m5 = ar_to_amar(ArModel(std::vector<double>(10, 0.09)));
  EXPECT_EQ(m5.scales(), std::vector<int>{10});
  EXPECT_NEAR(m5.coeffs()[0], 0.9, 1e-12);
}

TEST(ArToAmar, TrailingZeroRunIsNotAScale) {
  const auto m = ar_to_amar(ArModel({0.5, 0.2, 0.2, 0.0, 0.0}));
  EXPECT_EQ(m.scales(), (std::vector<int>{1, 3}));
}

TEST(ArToAmar, AllZeroIsNotRepresentable) {
  try {
    ar_to_amar(ArModel({0.0, 0.0}));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_representable);
  }
}

TEST(ArToAmar, RoundTripOnRandomModels) {
  std::mt19937_64 gen(13);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto m = random_model(gen, false, 0.1 + 2.0 * static_cast<double>(rep % 10) / 10.0);
    const int p = m.max_scale() + static_cast<int>(gen() % 4);
    const auto back = ar_to_amar(amar_to_ar(m, p));
    ASSERT_EQ(back.scales(), m.scales());
    for (std::size_t k = 0; k < m.q(); ++k) EXPECT_NEAR(back.coeffs()[k], m.coeffs()[k], 1e-12);
  }
}

TEST(CharPolynomial, ConstantTermIsOne) {
  const CharPolynomial b(ArModel({0.5, 0.2, 0.2}));
  EXPECT_EQ(b(0.0), std::complex<double>(1.0, 0.0));
  EXPECT_NEAR(std::abs(b(1.0) - std::complex<double>(1.0 - 0.9, 0.0)), 0.0, 1e-15);
}

TEST(Stationarity, SufficientTestExamples) {
  EXPECT_TRUE(is_stationary_sufficient(AmarModel({1, 3}, {0.3, 0.6})));
  EXPECT_FALSE(is_stationary_sufficient(AmarModel({1, 10}, {0.5, 0.5})));
  const AmarModel m2({2, 5}, {1.9, -1});
  EXPECT_FALSE(is_stationary_sufficient(m2));
  EXPECT_TRUE(is_stationary_exact(amar_to_ar(m2, 5)).stationary);
}

TEST(Stationarity, ExactTestExamples) {
  EXPECT_TRUE(is_stationary_exact(ArModel({0.5})).stationary);
  EXPECT_NEAR(is_stationary_exact(ArModel({0.5})).min_root_modulus, 2.0, 1e-12);
  const auto unit = is_stationary_exact(ArModel({1.0}));
  EXPECT_FALSE(unit.stationary);
  EXPECT_TRUE(unit.ill_conditioned);
}

TEST(Stationarity, M2RootModulusMatchesHighPrecisionOracle) {
  // Smallest root modulus of 1 - 0.75z - 0.75z^2 + 0.2z^3 + 0.2z^4 + 0.2z^5,
  // from 40-digit polynomial root finding.
  const double oracle = 1.0084870575833440574;
  const auto check = is_stationary_exact(ArModel({0.75, 0.75, -0.2, -0.2, -0.2}));
  EXPECT_TRUE(check.stationary);
  EXPECT_NEAR(check.min_root_modulus, oracle, 1e-12);
  EXPECT_FALSE(check.ill_conditioned);
}

TEST(Stationarity, MarginTightensTheTest) {
  const ArModel m2({0.75, 0.75, -0.2, -0.2, -0.2});
  EXPECT_TRUE(is_stationary_exact(m2, 0.008).stationary);
  EXPECT_FALSE(is_stationary_exact(m2, 0.009).stationary);
  EXPECT_THROW(is_stationary_exact(m2, -1.0), error);
}

TEST(Stationarity, SufficientImpliesExact) {
  std::mt19937_64 gen(14);
  for (int rep = 0; rep < 2000; ++rep) {
    const auto m = random_model(gen, false, 0.2 + 1.6 * std::uniform_real_distribution<double>(0, 1)(gen));
    if (is_stationary_sufficient(m)) {
      EXPECT_TRUE(is_stationary_exact(amar_to_ar(m, m.max_scale())).stationary);
    }
  }
}

TEST(Stationarity, NonnegativeCoefficientsAgree) {
  std::mt19937_64 gen(15);
  int disagreements = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    const double total = 0.5 + std::uniform_real_distribution<double>(0, 1)(gen);
    if (std::abs(total - 1.0) < 1e-6) continue;
    const auto m = random_model(gen, true, total);
    disagreements +=
        is_stationary_sufficient(m) != is_stationary_exact(amar_to_ar(m, m.max_scale())).stationary;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(Spectral, ZeroFrequencyLimit) {
  for (int tau : {1, 3, 10, 57}) EXPECT_NEAR(spectral_density_single_scale(0.7, tau, 0.0), 100.0 / 9.0, 1e-10);
  EXPECT_NEAR(spectral_density_single_scale(0.7, 10, 1e-13), 100.0 / 9.0, 1e-9);
}

TEST(Spectral, WhiteNoise) {
  for (double f : {-0.4, -0.1, 0.0, 0.2, 0.49}) EXPECT_DOUBLE_EQ(spectral_density_single_scale(0.0, 7, f), 1.0);
}

TEST(Spectral, HighPrecisionOracle) {
  // 40-digit evaluation of the closed form at alpha=0.7, tau=10, f=1/4; the
  // dense form 1/|1 - sum_j beta_j e^{-2 pi i f j}|^2 gives the same digits.
  EXPECT_NEAR(spectral_density_single_scale(0.7, 10, 0.25), 0.869716472429987823969386, 1e-13);
}

TEST(Spectral, AgreesWithDenseArForm) {
  for (double alpha : {-0.8, 0.3, 0.95})
    for (int tau : {1, 2, 5, 12})
      for (double f : {-0.37, -0.05, 0.11, 0.25, 0.43}) {
        std::complex<double> h = 1.0;
        for (int j = 1; j <= tau; ++j) h -= (alpha / tau) * std::polar(1.0, -2.0 * std::numbers::pi * f * j);
        EXPECT_NEAR(spectral_density_single_scale(alpha, tau, f), 1.0 / std::norm(h), 1e-11);
      }
}

TEST(Spectral, DomainErrorOutsideHalfOpenBand) {
  for (double f : {0.5, -0.5, 0.7}) {
    try {
      spectral_density_single_scale(0.5, 3, f);
      FAIL();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::domain);
    }
  }
}

TEST(Spectral, ApproachesOneForLongScales) {
  const double f = 0.2;
  double prev = std::numeric_limits<double>::infinity();
  for (int tau : {10, 100, 1000}) {
    const double dev = std::abs(spectral_density_single_scale(0.5, tau, f) - 1.0);
    EXPECT_LE(dev, prev);
    prev = dev;
  }
  EXPECT_LT(prev, 1e-2);
}

TEST(Seasonal, TwelveMonthExpansion) {
  const auto m = seasonal_to_amar(0.5, 0.8, 12);
  EXPECT_EQ(m.scales(), (std::vector<int>{1, 11, 12, 13}));
  const double phi = 0.5, Phi = 0.8;
  const std::vector<double> want_alpha = {phi, -11 * Phi, 12 * Phi * (1 + phi), -13 * phi * Phi};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(m.coeffs()[k], want_alpha[k], 1e-12);
  std::vector<double> want_beta(13, 0.0);
  want_beta[0] = 0.5;
  want_beta[11] = 0.8;
  want_beta[12] = -0.4;
  expect_beta(amar_to_ar(m, 13), want_beta);
}

TEST(Seasonal, SevenLagFactorGivesM4) {
  const auto m = seasonal_to_amar(0.5, 0.8, 7);
  EXPECT_EQ(m.scales(), (std::vector<int>{1, 6, 7, 8}));
  const std::vector<double> want = {0.5, -4.8, 8.4, -3.2};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(m.coeffs()[k], want[k], 1e-12);
  std::vector<double> beta(8, 0.0);
  beta[0] = 0.5;
  beta[6] = 0.8;
  beta[7] = -0.4;
  expect_beta(amar_to_ar(AmarModel({1, 6, 7, 8}, {0.5, -4.8, 8.4, -3.2}), 8), beta);
}

TEST(Seasonal, DegenerateParameters) {
  for (auto [phi, Phi] : {std::pair{0.5, 0.0}, std::pair{0.0, 0.8}}) {
    try {
      seasonal_to_amar(phi, Phi);
      FAIL();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::degenerate_parameter);
    }
  }
}
