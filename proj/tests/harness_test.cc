//
// Copyright 2026 The BinAgg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <vector>

#include "binagg/error.h"
#include "binagg/harness/config.h"
#include "binagg/harness/dataset.h"
#include "binagg/harness/experiments.h"
#include "binagg/harness/metrics.h"
#include "binagg/harness/pipeline.h"
#include "binagg/harness/report.h"
#include "binagg/harness/simulation.h"
#include "binagg/regression.h"
#include "gtest/gtest.h"

namespace binagg::harness {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

// ---- metrics ----

TEST(MetricsTest, RelativeErrors) {
  Vector truth(2), est(2);
  truth << 3.0, 4.0;
  est << 3.0, 5.0;
  EXPECT_DOUBLE_EQ(RelativeL2Error(est, truth), 1.0 / 5.0);
  EXPECT_DOUBLE_EQ(RelativeMse(est, truth), 1.0 / 25.0);
  EXPECT_THROW(RelativeL2Error(est, Vector::Zero(2)), Error);
  EXPECT_THROW(RelativeL2Error(Vector::Zero(3), truth), Error);
}

TEST(MetricsTest, Summaries) {
  const std::vector<double> v = {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
  EXPECT_DOUBLE_EQ(Mean(v), 5.0);
  EXPECT_DOUBLE_EQ(Variance(v), 32.0 / 7.0);
  EXPECT_DOUBLE_EQ(StdDev(v), std::sqrt(32.0 / 7.0));
  EXPECT_DOUBLE_EQ(Median(v), 4.5);
  EXPECT_DOUBLE_EQ(Median({3.0, 1.0, 2.0}), 2.0);
}

TEST(MetricsTest, KolmogorovSmirnov) {
  EXPECT_NEAR(KsStatistic({1, 2, 3}, {1.5, 2.5, 3.5}), 1.0 / 3, 1e-15);
  EXPECT_DOUBLE_EQ(KsStatistic({1, 2}, {1, 2}), 0.0);
  EXPECT_DOUBLE_EQ(KsStatistic({0, 1}, {5, 6}), 1.0);
  EXPECT_NEAR(KsCriticalValue(100, 100, 0.05),
              std::sqrt(-std::log(0.025) / 2) * std::sqrt(0.02), 1e-15);
}

// ---- simulation ----

TEST(SimulationTest, Law) {
  RandomSource rng(1, 0);
  const SimulatedData data = SimulateDataset(100000, 3, 1.0, rng);
  for (Eigen::Index i = 0; i < 3; ++i) {
    EXPECT_NEAR(data.x.col(i).mean(), 0.5, 0.01);
    EXPECT_GE(data.beta(i), 1.0);
    EXPECT_LE(data.beta(i), 2.0);
  }
  const Vector resid = data.y - data.x * data.beta;
  EXPECT_NEAR(resid.norm() / std::sqrt(100000.0), 1.0, 0.01);
}

TEST(SimulationTest, NoiselessLabelsAreExact) {
  RandomSource rng(2, 0);
  const SimulatedData data = SimulateDataset(50, 2, 0.0, rng);
  EXPECT_LT((data.y - data.x * data.beta).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SimulationTest, CoefficientsDoNotDependOnN) {
  RandomSource a(3, 0), b(3, 0);
  EXPECT_EQ(SimulateDataset(10, 4, 1.0, a).beta,
            SimulateDataset(500, 4, 1.0, b).beta);
}

TEST(SimulationTest, DefaultLabelBounds) {
  EXPECT_EQ(DefaultLabelUpper(1), 2.0);
  EXPECT_EQ(DefaultLabelUpper(5), 7.0);
  EXPECT_EQ(DefaultLabelUpper(10), 15.0);
  EXPECT_EQ(DefaultLabelUpper(3), 5.0);
}

// ---- dataset ----

DatasetSpec TwoFeatureSpec(ClipPolicy policy) {
  DatasetSpec spec;
  spec.label_column = "y";
  spec.feature_bounds = {{0.0, 1.0}, {-1.0, 1.0}};
  spec.label_bounds = {0.0, 10.0};
  spec.policy = policy;
  return spec;
}

TEST(DatasetTest, ParsesAndClips) {
  std::istringstream in("a, y ,b\n0.5,3,0.0\n1.5,2,-0.5\n0.25,11,2\n\n");
  const LoadedDataset d = ParseDataset(in, TwoFeatureSpec(ClipPolicy::kClip));
  EXPECT_EQ(d.feature_names, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(d.x.rows(), 3);
  EXPECT_EQ(d.x(1, 0), 1.0);   // clipped to the bound
  EXPECT_EQ(d.x(1, 1), -0.5);  // untouched
  EXPECT_EQ(d.y(2), 10.0);
  EXPECT_EQ(d.x(2, 1), 1.0);
  EXPECT_EQ(d.clipped_rows, 2u);
  EXPECT_EQ(d.rejected_rows, 0u);
}

TEST(DatasetTest, RejectDropsRows) {
  std::istringstream in("a,y,b\n0.5,3,0.0\n1.5,2,-0.5\n0.25,1,0.75\n");
  const LoadedDataset d = ParseDataset(in, TwoFeatureSpec(ClipPolicy::kReject));
  ASSERT_EQ(d.x.rows(), 2);
  EXPECT_EQ(d.rejected_rows, 1u);
  EXPECT_EQ(d.x(1, 0), 0.25);
  EXPECT_EQ(d.x(1, 1), 0.75);
}

TEST(DatasetTest, Errors) {
  const DatasetSpec spec = TwoFeatureSpec(ClipPolicy::kClip);
  auto parse = [&](const std::string& text) {
    return [text, &spec] {
      std::istringstream in(text);
      ParseDataset(in, spec);
    };
  };
  EXPECT_EQ(CodeOf(parse("")), ErrorCode::kLoadError);
  EXPECT_EQ(CodeOf(parse("a,y,b\n")), ErrorCode::kLoadError);  // no rows
  EXPECT_EQ(CodeOf(parse("a,z,b\n1,2,3\n")), ErrorCode::kLoadError);
  EXPECT_EQ(CodeOf(parse("a,y\n1,2\n")), ErrorCode::kLoadError);
  EXPECT_EQ(CodeOf(parse("a,y,b\n1,2\n")), ErrorCode::kLoadError);
  try {
    std::istringstream in("a,y,b\n0.1,1,0\n0.2,x,0\n");
    ParseDataset(in, spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLoadError);
    EXPECT_NE(std::string(e.what()).find("line 3, column 2"), std::string::npos)
        << e.what();
  }
  DatasetSpec missing = spec;
  missing.path = "/nonexistent/file.csv";
  EXPECT_EQ(CodeOf([&] { LoadDataset(missing); }), ErrorCode::kLoadError);
}

TEST(DatasetTest, ClipHelpers) {
  DataMatrix x(2, 2);
  x << -1.0, 0.5, 0.5, 3.0;
  EXPECT_EQ(ClipToBox(x, Box::Unit(2)), 2u);
  EXPECT_EQ(x(0, 0), 0.0);
  EXPECT_EQ(x(1, 1), 1.0);
  Vector y(3);
  y << -1.0, 0.5, 9.0;
  EXPECT_EQ(ClipLabels(y, 0.0, 2.0), 2u);
  EXPECT_EQ(y(2), 2.0);
}

// ---- config ----

TEST(ConfigTest, ParseAndApply) {
  std::istringstream in(
      "# comment\n total_mu = 2 \nratios=2:3:3:3\nbounds = 0:1, -1:1\n"
      "label_bounds=0:7 # trailing\nseed=42\nreps=10\nalpha=0.1\n"
      "strict_l2_mode=true\nalgorithm2_literal_debias=yes\nintercept=0\n"
      "theta=-inf\nmax_depth=12\nmin_count=3\n");
  RunSettings s;
  ApplySettings(ParseKeyValues(in), s);
  EXPECT_EQ(s.pipeline.total_mu, 2.0);
  EXPECT_EQ(s.pipeline.ratios.bin, 2.0);
  ASSERT_EQ(s.bounds.size(), 2u);
  EXPECT_EQ(s.bounds[1], std::make_pair(-1.0, 1.0));
  EXPECT_EQ(*s.label_bounds, std::make_pair(0.0, 7.0));
  EXPECT_EQ(s.seed, 42u);
  EXPECT_EQ(s.reps, 10u);
  EXPECT_EQ(s.pipeline.alpha, 0.1);
  EXPECT_TRUE(s.pipeline.strict_l2);
  EXPECT_EQ(s.pipeline.scaling, CorrectionScaling::kAveraged);
  EXPECT_FALSE(s.pipeline.intercept);
  EXPECT_EQ(s.pipeline.theta, -INFINITY);
  EXPECT_EQ(s.pipeline.max_depth, 12);
  EXPECT_EQ(s.pipeline.min_count, 3);
}

TEST(ConfigTest, Rejects) {
  RunSettings s;
  EXPECT_THROW(ApplySetting("nope", "1", s), Error);
  EXPECT_THROW(ApplySetting("total_mu", "0", s), Error);
  EXPECT_THROW(ApplySetting("ratios", "1:2:3", s), Error);
  EXPECT_THROW(ApplySetting("bounds", "1:0", s), Error);
  EXPECT_THROW(ApplySetting("alpha", "1.5", s), Error);
  EXPECT_THROW(ApplySetting("seed", "-3", s), Error);
  EXPECT_THROW(ApplySetting("intercept", "maybe", s), Error);
  std::istringstream bad("no equals sign\n");
  EXPECT_THROW(ParseKeyValues(bad), Error);
}

TEST(ConfigTest, Sweep) {
  const Sweep s = ParseSweep("theta=0,-5, -10");
  EXPECT_EQ(s.key, "theta");
  EXPECT_EQ(s.values, (std::vector<std::string>{"0", "-5", "-10"}));
  EXPECT_THROW(ParseSweep("theta"), Error);
  EXPECT_THROW(ParseSweep("bounds=0:1"), Error);
}

// ---- pipeline ----

TEST(PipelineTest, NoNoiseReproducesExactWls) {
  RandomSource data_rng(4, 0);
  SimulatedData data = SimulateDataset(2000, 2, 0.5, data_rng);
  ClipLabels(data.y, 0.0, 5.0);
  PipelineConfig config;
  config.zero_noise = true;
  RandomSource rng(4, 1);
  const RegressionRun run =
      RunRegression(data.x, data.y, Box::Unit(2), 5.0, config, rng);
  const PrivatizedSummaries exact = ExactSummaries(run.prep.prepared);
  const Vector wls = WlsExact(exact.sums_x, exact.weights, exact.sums_y);
  EXPECT_LT((run.fit.beta - wls).norm(), 1e-10);
  EXPECT_LT((run.naive_beta - wls).norm(), 1e-10);
  for (const auto& b : run.prep.prepared.bins) EXPECT_EQ(b.true_count, b.noisy_count);
}

TEST(PipelineTest, InterceptAddsCoordinate) {
  RandomSource data_rng(5, 0);
  SimulatedData data = SimulateDataset(3000, 2, 0.5, data_rng);
  data.y.array() += 1.0;
  ClipLabels(data.y, 0.0, 6.0);
  PipelineConfig config;
  config.intercept = true;
  RandomSource rng(5, 1);
  const RegressionRun run =
      RunRegression(data.x, data.y, Box::Unit(2), 6.0, config, rng);
  EXPECT_EQ(run.fit.dims, 3u);
}

TEST(PipelineTest, SynthesisRunMatchesBins) {
  RandomSource data_rng(6, 0);
  SimulatedData data = SimulateDataset(1000, 2, 0.5, data_rng);
  ClipLabels(data.y, 0.0, 5.0);
  RandomSource rng(6, 1);
  const SynthesisRun run = RunSynthesis(data.x, data.y, Box::Unit(2), 5.0,
                                        PipelineConfig{}, SynthesisOptions{}, rng);
  int64_t total = 0;
  for (const auto& b : run.prep.prepared.bins) total += b.noisy_count;
  EXPECT_EQ(static_cast<int64_t>(run.dataset.records.size()), total);
}

// ---- experiments and reports ----

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  ParallelFor(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(ParallelFor(10, 3,
                           [](std::size_t i) {
                             if (i == 7) Fail(ErrorCode::kInvalidArgument, "x");
                           }),
               Error);
}

SimulationConfig SmallCoverage() {
  SimulationConfig c;
  c.n = 800;
  c.d = 2;
  c.repetitions = 60;
  c.base_seed = 99;
  return c;
}

TEST(CoverageTest, IndependentOfWorkerCount) {
  SimulationConfig a = SmallCoverage();
  a.workers = 1;
  SimulationConfig b = SmallCoverage();
  b.workers = 5;
  EXPECT_EQ(CoverageToJson(CoverageExperiment(a)).dump(),
            CoverageToJson(CoverageExperiment(b)).dump());
}

TEST(CoverageTest, ReportIsSelfConsistent) {
  const CoverageReport r = CoverageExperiment(SmallCoverage());
  ASSERT_EQ(r.summary.size(), 2u);
  EXPECT_EQ(r.reps.size(), 60u);
  const auto json = CoverageToJson(r);
  EXPECT_TRUE(CoverageJsonIsConsistent(json));
  auto tampered = json;
  tampered["summary"][0]["coverage"] = 0.123;
  EXPECT_FALSE(CoverageJsonIsConsistent(tampered));
  // Timing is opt-in so default output is reproducible.
  EXPECT_FALSE(json["reps"][0].contains("wall_ms"));
  EXPECT_TRUE(CoverageToJson(r, true)["reps"][0].contains("wall_ms"));
  std::ostringstream csv;
  WriteCoverageCsv(r, csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "coefficient,avg_bias,empirical_sd,avg_theoretical_sd,"
            "naive_theoretical_sd,coverage,naive_coverage");
}

TEST(CoverageTest, FailuresAreRecordedAndExcluded) {
  // Tiny n with an aggressive discard threshold leaves too few bins.
  SimulationConfig c = SmallCoverage();
  c.n = 30;
  c.d = 5;
  c.repetitions = 20;
  c.pipeline.min_count = 10;
  const CoverageReport r = CoverageExperiment(c);
  EXPECT_GT(r.failures, 0u);
  for (const auto& rep : r.reps) {
    if (!rep.ok) {
      EXPECT_FALSE(rep.error.empty());
    }
  }
  EXPECT_TRUE(CoverageJsonIsConsistent(CoverageToJson(r)));
}

TEST(ErrorCurveTest, GridValidationAndConsistency) {
  SimulationConfig c;
  c.d = 1;
  c.repetitions = 10;
  EXPECT_THROW(ErrorCurveExperiment(c, {}), Error);
  EXPECT_THROW(ErrorCurveExperiment(c, {512, 256}), Error);
  const ErrorCurveReport r = ErrorCurveExperiment(c, {256, 1024});
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_EQ(r.rows.size(), 20u);
  EXPECT_TRUE(ErrorCurveJsonIsConsistent(ErrorCurveToJson(r)));
  for (const auto& p : r.points) EXPECT_LT(p.mean_ols_error, p.mean_binagg_error);
}

// Loose-bounds study: doubling the feature and label bounds at d = 5,
// n = 1000 degrades the median error by a recorded factor.
constexpr double kLooseBoundsMedianRatio = 2.683;
constexpr double kLooseBoundsRatioTolerance = 0.01;

TEST(ErrorCurveTest, LooseBoundsSnapshot) {
  SimulationConfig c;
  c.d = 5;
  c.repetitions = 60;
  auto median_error = [&](double scale) {
    c.bound_scale = scale;
    const ErrorCurveReport r = ErrorCurveExperiment(c, {1000});
    std::vector<double> e;
    for (const auto& row : r.rows) {
      if (row.ok) e.push_back(row.binagg_error);
    }
    return Median(e);
  };
  const double tight = median_error(1.0);
  const double loose = median_error(2.0);
  EXPECT_GT(loose, tight);
  EXPECT_NEAR(loose / tight, kLooseBoundsMedianRatio, kLooseBoundsRatioTolerance);
}

TEST(EquivalenceTest, SmallRun) {
  EquivalenceConfig c;
  c.repetitions = 1500;
  // Relative SD of a sample variance at 1500 draws is about 0.05 per side.
  c.var_tolerance = 0.25;
  const EquivalenceReport r = EquivalenceExperiment(c);
  EXPECT_EQ(r.checks.size(), r.bins * (r.dims + 1));
  std::size_t failed = 0;
  for (const auto& check : r.checks) failed += !check.ok();
  // At these sample sizes a rare single-check failure is expected by chance.
  EXPECT_LE(failed, 2u);
  std::ostringstream csv;
  WriteEquivalenceCsv(r, csv);
  EXPECT_NE(csv.str().find("ks_critical"), std::string::npos);
}

}  // namespace
}  // namespace binagg::harness
