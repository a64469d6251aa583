#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

using namespace amar;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("amar_cli_") + info->name());
    fs::create_directories(dir_);
  }
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name)) << content;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  // Runs the binary; stdout and stderr land in out.txt / err.txt.
  int amar(const std::string& args) {
    const std::string cmd =
        std::string(AMAR_CLI_PATH) + " " + args + " >" + path("out.txt") + " 2>" + path("err.txt");
    const int status = std::system(cmd.c_str());
    out = slurp(path("out.txt"));
    err = slurp(path("err.txt"));
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string out, err;
  fs::path dir_;
};

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(cli::exit_code_for(errc::unknown_preset), 2);
  EXPECT_EQ(cli::exit_code_for(errc::invalid_order), 2);
  EXPECT_EQ(cli::exit_code_for(errc::parse), 3);
  EXPECT_EQ(cli::exit_code_for(errc::data_gap), 3);
  EXPECT_EQ(cli::exit_code_for(errc::insufficient_history), 3);
  EXPECT_EQ(cli::exit_code_for(errc::explosive_path), 4);
  EXPECT_EQ(cli::exit_code_for(errc::infeasible_threshold), 4);
}

TEST(Split, FloorOfTestShare) {
  EXPECT_EQ(cli::train_length(10, 0.3), 7U);
  EXPECT_EQ(cli::train_length(11, 0.3), 8U);
  EXPECT_THROW(cli::train_length(2, 0.3), error);
  EXPECT_THROW(cli::train_length(100, 1.0), error);
}

TEST_F(CliTest, SimulateIsDeterministicInSeed) {
  ASSERT_EQ(amar("simulate --preset M1 --T 50 --seed 9"), 0) << err;
  const std::string first = out;
  EXPECT_EQ(count_lines(first), 51U);
  EXPECT_EQ(first.rfind("t,x\n", 0), 0U);
  EXPECT_NE(err.find("seed: 9"), std::string::npos);
  ASSERT_EQ(amar("simulate --preset M1 --T 50 --seed 9"), 0);
  EXPECT_EQ(out, first);
  ASSERT_EQ(amar("simulate --preset M1 --T 50 --seed 10"), 0);
  EXPECT_NE(out, first);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(amar(""), 2);
  EXPECT_EQ(amar("simulate --preset M1 --bogus"), 2);
  EXPECT_EQ(amar("simulate --preset M99"), 2);
  EXPECT_NE(err.find("unknown-preset"), std::string::npos) << err;
  EXPECT_EQ(amar("simulate --preset M1 --scales 1 --coeffs 0.5"), 2);
  EXPECT_EQ(amar("simulate --scales 3,1 --coeffs 0.2,0.2"), 2);
  EXPECT_EQ(amar("simulate --preset M1 --innovation student"), 2);
}

TEST_F(CliTest, DataErrorsExitThree) {
  EXPECT_EQ(amar("fit --data " + path("nope.csv")), 3);
  const auto gap = write("gap.csv", "x\n1\n2\n\n3\nNA\n4\n");
  EXPECT_EQ(amar("fit --data " + gap), 3);
  EXPECT_NE(err.find("row 6"), std::string::npos) << err;
  const auto bad = write("bad.csv", "x\n1\nfoo\n");
  EXPECT_EQ(amar("fit --data " + bad), 3);
}

TEST_F(CliTest, NumericalErrorsExitFour) {
  EXPECT_EQ(amar("simulate --scales 1 --coeffs 1.5 --T 20"), 4);
  EXPECT_NE(err.find("explosive-path"), std::string::npos) << err;
  ASSERT_EQ(amar("simulate --preset M1 --T 300 --out " + path("m1.csv")), 0);
  EXPECT_EQ(amar("fit --data " + path("m1.csv") + " --p 8 --zeta 1e-9 --qmax 1"), 4);
}

TEST_F(CliTest, FitRecoversM1Scales) {
  ASSERT_EQ(amar("simulate --preset M1 --T 2000 --seed 3 --out " + path("m1.csv")), 0);
  ASSERT_EQ(amar("fit --data " + path("m1.csv") + " --p 6 --json " + path("fit.json")), 0) << err;
  EXPECT_NE(out.find("scales (q=2)"), std::string::npos) << out;
  const auto rep = fit_report_from_json(read_json_file(path("fit.json")));
  EXPECT_EQ(rep.scales, (std::vector<int>{1, 3}));
}

TEST_F(CliTest, ConfigFileIsOverriddenByFlags) {
  const auto cfg = write("amar.ini", "[simulate]\npreset=M5\nT=40\nseed=4\n");
  ASSERT_EQ(amar("--config " + cfg + " simulate"), 0) << err;
  EXPECT_EQ(count_lines(out), 41U);
  const std::string from_file = out;
  ASSERT_EQ(amar("--config " + cfg + " simulate --T 15"), 0) << err;
  EXPECT_EQ(count_lines(out), 16U);
  ASSERT_EQ(amar("simulate --preset M5 --T 40 --seed 4"), 0);
  EXPECT_EQ(out, from_file);
}

TEST_F(CliTest, ForecastEmitsLevelPredictions) {
  ASSERT_EQ(amar("simulate --preset M2 --T 400 --seed 5 --out " + path("m2.csv")), 0);
  ASSERT_EQ(amar("forecast --data " + path("m2.csv") + " --emit " + path("pred.csv")), 0) << err;
  EXPECT_NE(out.find("train/test:    280 / 120"), std::string::npos) << out;
  EXPECT_NE(out.find("hit rate:"), std::string::npos);
  const std::string pred = slurp(path("pred.csv"));
  EXPECT_EQ(pred.rfind("t,actual,predicted\n", 0), 0U);
  EXPECT_EQ(count_lines(pred), 121U);
}

TEST_F(CliTest, PlotDataAndStationarity) {
  ASSERT_EQ(amar("plotdata --kind spectral --out " + path("s.csv") + " --points 16"), 0) << err;
  EXPECT_EQ(count_lines(slurp(path("s.csv"))), 17U);
  ASSERT_EQ(amar("stationarity --preset M2"), 0) << err;
  EXPECT_NE(out.find("exact:         yes"), std::string::npos) << out;
  ASSERT_EQ(amar("stationarity --beta 1,0.2"), 0);
  EXPECT_NE(out.find("exact:         no"), std::string::npos) << out;
}

TEST_F(CliTest, BenchWritesCsv) {
  ASSERT_EQ(amar("bench --models M5 --T 200 --reps 2 --seed 1 --out " + path("b.csv")), 0) << err;
  const std::string csv = slurp(path("b.csv"));
  EXPECT_EQ(csv.rfind("model,T,reps,metric,mean,se\n", 0), 0U);
  EXPECT_EQ(amar("bench --models M5 --T 200 --reps 1"), 2);
}

TEST_F(CliTest, AmvarFitReportsComponents) {
  std::ostringstream csv;
  csv << "t,a,b\n";
  const auto a = simulate(preset("M1").with_innovation(InnovationSpec::gaussian(1.0, 1)), 600);
  const auto b = simulate(preset("M5").with_innovation(InnovationSpec::gaussian(1.0, 2)), 600);
  csv.precision(17);
  for (std::size_t t = 0; t < a.size(); ++t) csv << t + 1 << ',' << a[t] << ',' << b[t] << '\n';
  const auto p = write("v.csv", csv.str());
  ASSERT_EQ(amar("amvar-fit --data " + p + " --scales 1,3,10"), 0) << err;
  EXPECT_NE(out.find("a"), std::string::npos);
  EXPECT_NE(out.find("RMSPE"), std::string::npos) << out;
}

TEST(EvaluateForecasts, UndoesDifferencingAndMean) {
  IngestedSeries s;
  s.transform.levels = {0, 1, 3, 6, 10, 15, 21, 28, 36, 45, 55};
  s.transform.differenced = true;
  s.transform.demeaned = true;
  std::vector<double> d;
  for (std::size_t i = 1; i < s.transform.levels.size(); ++i) d.push_back(s.transform.levels[i] - s.transform.levels[i - 1]);
  double mu = 0;
  for (double v : d) mu += v;
  mu /= static_cast<double>(d.size());
  s.transform.mean_removed = mu;
  for (double v : d) s.values.push_back(v - mu);

  // A single scale-1 coefficient of 1 on the demeaned differences.
  const ScaleModel m{{1}, {1.0}};
  const auto f = cli::evaluate_forecasts(m, s, 0.3);
  ASSERT_EQ(f.n_train, 7U);
  ASSERT_EQ(f.rows.size(), 3U);
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = 7 + k;
    const double pred_diff = s.values[i - 1] + mu;
    EXPECT_EQ(f.rows[k].t, i + 2);
    EXPECT_DOUBLE_EQ(f.rows[k].actual, s.transform.levels[i + 1]);
    EXPECT_DOUBLE_EQ(f.rows[k].predicted, s.transform.levels[i] + pred_diff);
  }
  // differences are 1..10 so one-step errors of the persistence rule are all 1
  EXPECT_NEAR(f.mspe, 1.0, 1e-12);
  EXPECT_EQ(f.hit_rate, 1.0);
}

TEST(TwoScaleWorkflow, FindsPlantedScale) {
  const AmarModel truth({1, 20}, {0.3, 0.6}, InnovationSpec::gaussian(1.0, 8));
  IngestedSeries s;
  s.values = simulate(truth, 3000);
  s.transform.levels = s.values;
  const auto w = cli::two_scale_workflow(s, 0.3, 2, 60);
  EXPECT_EQ(w.search.best_tau2, 20);
  EXPECT_EQ(w.forecast.n_test, 900U);
  EXPECT_LT(w.forecast.mspe, 1.2);
}
