#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "amar/evalbench.hpp"
#include "amar/simulator.hpp"

using namespace amar;

TEST(Innovations, GaussianVariance) {
  const auto z = draw_innovations(InnovationSpec::gaussian(1.0, 17), 100000);
  double m = 0.0, v = 0.0;
  for (double x : z) m += x;
  m /= z.size();
  for (double x : z) v += (x - m) * (x - m);
  v /= z.size() - 1;
  EXPECT_NEAR(v, 1.0, 0.03);
}

TEST(Innovations, GaussianSigmaScales) {
  const auto a = draw_innovations(InnovationSpec::gaussian(1.0, 4), 11);
  const auto b = draw_innovations(InnovationSpec::gaussian(2.5, 4), 11);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_DOUBLE_EQ(b[i], 2.5 * a[i]);
}

TEST(Innovations, ParetoTailProbability) {
  const std::size_t n = 100000;
  const auto z = draw_innovations(InnovationSpec::pareto(3.0, 18), n);
  std::size_t exceed = 0, negative = 0;
  for (double x : z) {
    ASSERT_GE(std::abs(x), 1.0);
    exceed += std::abs(x) > 2.0;
    negative += x < 0.0;
  }
  const double p = 0.125;
  const double se = std::sqrt(p * (1 - p) / n);
  EXPECT_NEAR(static_cast<double>(exceed) / n, p, 3 * se);
  EXPECT_NEAR(static_cast<double>(negative) / n, 0.5, 3 * std::sqrt(0.25 / n));
}

TEST(Innovations, CauchyMedianAndQuartiles) {
  auto z = draw_innovations(InnovationSpec::cauchy(19), 100000);
  std::sort(z.begin(), z.end());
  EXPECT_NEAR(z[z.size() / 2], 0.0, 0.02);
  // Standard Cauchy quartiles are -1 and 1.
  EXPECT_NEAR(z[z.size() / 4], -1.0, 0.03);
  EXPECT_NEAR(z[3 * z.size() / 4], 1.0, 0.03);
}

TEST(Innovations, DeterministicGivenSeed) {
  for (auto spec : {InnovationSpec::gaussian(1.0, 5), InnovationSpec::pareto(3.0, 5), InnovationSpec::cauchy(5)}) {
    EXPECT_EQ(draw_innovations(spec, 1000), draw_innovations(spec, 1000));
    EXPECT_NE(draw_innovations(spec, 1000), draw_innovations(spec.with_seed(6), 1000));
  }
}

TEST(Simulate, HandUnrolledAr1) {
  const auto spec = InnovationSpec::gaussian(1.0, 21);
  const AmarModel m({1}, {0.9}, spec);
  const auto x = simulate(m, 5, {0, false});
  const auto eps = draw_innovations(spec, 5);
  double prev = 0.0;
  for (std::size_t t = 0; t < 5; ++t) {
    const double want = 0.9 * prev + eps[t];
    EXPECT_DOUBLE_EQ(x[t], want);
    prev = want;
  }
}

TEST(Simulate, RecursionFromRunningMeans) {
  // Path must satisfy the running-mean form directly, not only the AR form.
  const auto spec = InnovationSpec::gaussian(1.0, 22);
  const AmarModel m({2, 5}, {1.9, -1.0}, spec);
  const auto path = simulate_path(m, 300, {50, false});
  for (std::size_t t = 5; t < path.x.size(); ++t) {
    double m2 = 0.0, m5 = 0.0;
    for (std::size_t j = 1; j <= 2; ++j) m2 += path.x[t - j];
    for (std::size_t j = 1; j <= 5; ++j) m5 += path.x[t - j];
    EXPECT_NEAR(path.x[t], 1.9 * m2 / 2 - 1.0 * m5 / 5 + path.innovations[t], 1e-10);
  }
}

TEST(Simulate, EmptyArIsNoise) {
  const auto spec = InnovationSpec::gaussian(1.0, 23);
  const auto path = simulate_ar({}, spec, 20, 0);
  EXPECT_EQ(path.x, draw_innovations(spec, 20));
}

TEST(Simulate, BurnInDropsLeadingValues) {
  const auto spec = InnovationSpec::gaussian(1.0, 24);
  const AmarModel m({1, 3}, {0.3, 0.6}, spec);
  const auto full = simulate(m, 130, {0, false});
  const auto burned = simulate(m, 100, {30, false});
  for (std::size_t t = 0; t < 100; ++t) EXPECT_DOUBLE_EQ(burned[t], full[t + 30]);
  EXPECT_EQ(default_burn_in(3), 1030);
}

TEST(Simulate, Reproducible) {
  const AmarModel m({1, 3}, {0.3, 0.6}, InnovationSpec::gaussian(1.0, 25));
  EXPECT_EQ(simulate(m, 500), simulate(m, 500));
}

TEST(Simulate, NonstationaryNeedsFlag) {
  const AmarModel unit({1, 10}, {0.5, 0.5}, InnovationSpec::gaussian(1.0, 26));
  EXPECT_THROW(simulate(unit, 100), error);
  EXPECT_NO_THROW(simulate(unit, 100, {-1, true}));
}

TEST(Simulate, ExplosivePathReportsIndex) {
  const AmarModel boom({1}, {3.0}, InnovationSpec::gaussian(1.0, 27));
  try {
    simulate(boom, 2000, {0, true});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::explosive_path);
    EXPECT_NE(std::string(e.what()).find("index"), std::string::npos);
  }
}

TEST(Simulate, M6ScaleAtT400) {
  const auto m = preset("M6", 400);
  EXPECT_EQ(m.scales(), (std::vector<int>{1, 10}));
}

TEST(Simulate, StationaryPresetsHaveZeroMean) {
  for (const char* name : {"M1", "M2", "M3", "M4", "M5"}) {
    AmarModel m = preset(name);
    m = m.with_innovation(InnovationSpec::gaussian(1.0, 28));
    const auto x = simulate(m, 100000);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();
    // Standard error from the long-run variance sigma^2 / b(1)^2.
    const auto beta = amar_to_ar(m, m.max_scale()).coeffs();
    double b1 = 1.0;
    for (double b : beta) b1 -= b;
    const double se = 1.0 / std::abs(b1) / std::sqrt(static_cast<double>(x.size()));
    EXPECT_LT(std::abs(mean), 5 * se) << name;
  }
}

TEST(Simulate, ReplicationSeedsGiveDistinctPaths) {
  const AmarModel m = preset("M1");
  std::vector<std::vector<double>> paths;
  for (std::uint64_t r = 0; r < 20; ++r)
    paths.push_back(simulate(m.with_innovation(m.innovation().with_seed(replication_seed(99, r))), 50));
  std::sort(paths.begin(), paths.end());
  EXPECT_EQ(std::adjacent_find(paths.begin(), paths.end()), paths.end());
}
