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

#include "binagg/harness/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "binagg/error.h"
#include "binagg/harness/dataset.h"
#include "binagg/harness/metrics.h"
#include "binagg/harness/simulation.h"
#include "binagg/regression.h"
#include "binagg/synthesis.h"

namespace binagg::harness {
namespace {

constexpr uint64_t kDirectStream = 11;
constexpr uint64_t kSyntheticStream = 12;
constexpr uint64_t kInstanceStream = 0xFFFFFFFFULL;

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

struct SimulatedProblem {
  SimulatedData data;
  Box domain;
  double label_bound;
};

// Draws one dataset and clips it to the (possibly scaled) simulation bounds.
SimulatedProblem DrawProblem(std::size_t n, std::size_t d, double sigma,
                             std::optional<double> label_upper,
                             double bound_scale, RandomSource& rng) {
  SimulatedData data = SimulateDataset(n, d, sigma, rng);
  const Box domain = Box::Unit(d).Scaled(bound_scale);
  const double upper = label_upper.value_or(DefaultLabelUpper(d)) * bound_scale;
  ClipToBox(data.x, domain);
  ClipLabels(data.y, 0.0, upper);
  return SimulatedProblem{std::move(data), domain, LabelBound(0.0, upper)};
}

}  // namespace

void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---- Coverage --------------------------------------------------------------

std::vector<CoordinateSummary> SummarizeCoverage(
    const std::vector<CoverageRep>& reps, std::size_t d, double z) {
  std::vector<CoordinateSummary> out(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    std::vector<double> err, se, naive_se;
    double covered = 0, naive_covered = 0;
    for (const CoverageRep& r : reps) {
      if (!r.ok) continue;
      const double e = r.beta(jj) - r.truth(jj);
      err.push_back(e);
      se.push_back(r.se(jj));
      naive_se.push_back(r.naive_se(jj));
      if (std::fabs(e) <= z * r.se(jj)) covered += 1;
      if (std::fabs(e) <= z * r.naive_se(jj)) naive_covered += 1;
    }
    if (err.empty()) continue;
    const double m = static_cast<double>(err.size());
    CoordinateSummary& s = out[j];
    s.avg_bias = Mean(err);
    s.empirical_sd = err.size() >= 2 ? StdDev(err) : 0.0;
    s.avg_theoretical_sd = Mean(se);
    s.naive_theoretical_sd = Mean(naive_se);
    s.coverage = covered / m;
    s.naive_coverage = naive_covered / m;
  }
  return out;
}

CoverageReport CoverageExperiment(const SimulationConfig& config) {
  Require(config.repetitions >= 1, "repetitions must be at least 1");
  Require(config.n > config.d, "simulation needs n > d");
  const std::size_t d = config.d + (config.pipeline.intercept ? 1 : 0);

  CoverageReport report;
  report.config = config;
  report.z = CriticalValue(config.pipeline.alpha);
  report.reps.resize(config.repetitions);

  ParallelFor(config.repetitions, config.workers, [&](std::size_t r) {
    const auto start = std::chrono::steady_clock::now();
    CoverageRep& rep = report.reps[r];
    rep.rep = r;
    RandomSource rng(config.base_seed, r);
    RandomSource data_rng = rng.Substream(kDataStream);
    SimulatedProblem problem =
        DrawProblem(config.n, config.d, config.sigma, config.label_upper,
                    config.bound_scale, data_rng);
    rep.truth = problem.data.beta;
    if (config.pipeline.intercept) {
      rep.truth.conservativeResize(static_cast<Eigen::Index>(d));
      rep.truth(static_cast<Eigen::Index>(config.d)) = 0.0;
    }
    try {
      RegressionRun run =
          RunRegression(problem.data.x, problem.data.y, problem.domain,
                        problem.label_bound, config.pipeline, rng);
      rep.bins = run.fit.bins;
      rep.beta = run.fit.beta;
      rep.se = run.fit.StandardErrors();
      // The simulation knows the error scale, so the naive covariance uses
      // it directly.
      const Matrix naive =
          NaiveCovariance(run.priv, config.sigma * config.sigma);
      rep.naive_se = naive.diagonal().cwiseMax(0.0).cwiseSqrt();
      rep.rel_error = RelativeL2Error(rep.beta, rep.truth);
      rep.ok = rep.beta.allFinite() && rep.se.allFinite();
      if (!rep.ok) rep.error = "non-finite estimate";
    } catch (const Error& e) {
      rep.ok = false;
      rep.error = e.what();
    }
    rep.wall_ms = ElapsedMs(start);
  });

  report.summary = SummarizeCoverage(report.reps, d, report.z);
  bool exceeds = true;
  for (const CoverageRep& rep : report.reps) {
    if (!rep.ok) {
      ++report.failures;
      continue;
    }
    if (!(rep.se.array() > rep.naive_se.array()).all()) exceeds = false;
  }
  report.debiased_exceeds_naive = exceeds && report.failures < report.reps.size();
  return report;
}

// ---- Error curve -----------------------------------------------------------

std::vector<ErrorCurvePoint> SummarizeErrorCurve(
    const std::vector<ErrorCurveRow>& rows,
    const std::vector<std::size_t>& n_grid) {
  std::vector<ErrorCurvePoint> out;
  for (std::size_t n : n_grid) {
    ErrorCurvePoint p;
    p.n = n;
    std::vector<double> binagg, ols, bins;
    for (const ErrorCurveRow& row : rows) {
      if (row.n != n) continue;
      if (!row.ok) {
        ++p.failures;
        continue;
      }
      binagg.push_back(row.binagg_error);
      ols.push_back(row.ols_error);
      bins.push_back(static_cast<double>(row.bins));
    }
    if (!binagg.empty()) {
      p.mean_binagg_error = Mean(binagg);
      p.sd_binagg_error = binagg.size() >= 2 ? StdDev(binagg) : 0.0;
      p.mean_ols_error = Mean(ols);
      p.median_bins = Median(bins);
    }
    out.push_back(p);
  }
  return out;
}

ErrorCurveReport ErrorCurveExperiment(const SimulationConfig& config,
                                      const std::vector<std::size_t>& n_grid) {
  Require(!n_grid.empty(), "n grid is empty");
  Require(std::is_sorted(n_grid.begin(), n_grid.end()) &&
              std::adjacent_find(n_grid.begin(), n_grid.end()) == n_grid.end(),
          "n grid must be strictly ascending");
  Require(n_grid.front() > config.d, "every n must exceed d");
  Require(!config.pipeline.intercept,
          "the error curve compares against a no-intercept truth");

  ErrorCurveReport report;
  report.config = config;
  report.n_grid = n_grid;
  const std::size_t reps = config.repetitions;
  report.rows.resize(n_grid.size() * reps);

  ParallelFor(report.rows.size(), config.workers, [&](std::size_t idx) {
    const std::size_t g = idx / reps;
    const std::size_t r = idx % reps;
    const auto start = std::chrono::steady_clock::now();
    ErrorCurveRow& row = report.rows[idx];
    row.n = n_grid[g];
    row.rep = r;
    // Paired design: one coefficient draw per repetition, shared by every n.
    const RandomSource base(config.base_seed, r);
    RandomSource beta_rng = base.Substream(kDataStream);
    const Vector beta = DrawCoefficients(config.d, beta_rng);
    RandomSource rng = base.Substream(row.n);
    RandomSource data_rng = rng.Substream(kDataStream);
    SimulatedData raw = SimulateDataset(row.n, beta, config.sigma, data_rng);
    try {
      row.ols_error = RelativeL2Error(OlsExact(raw.x, raw.y), raw.beta);
      const Box domain = Box::Unit(config.d).Scaled(config.bound_scale);
      const double upper =
          config.label_upper.value_or(DefaultLabelUpper(config.d)) *
          config.bound_scale;
      DataMatrix x = raw.x;
      Vector y = raw.y;
      ClipToBox(x, domain);
      ClipLabels(y, 0.0, upper);
      RegressionRun run = RunRegression(x, y, domain, LabelBound(0.0, upper),
                                        config.pipeline, rng);
      row.bins = run.fit.bins;
      row.binagg_error = RelativeL2Error(run.fit.beta, raw.beta);
      row.ok = std::isfinite(row.binagg_error);
      if (!row.ok) row.error = "non-finite estimate";
    } catch (const Error& e) {
      row.ok = false;
      row.error = e.what();
    }
    row.wall_ms = ElapsedMs(start);
  });
  report.points = SummarizeErrorCurve(report.rows, n_grid);
  return report;
}

// ---- Equivalence -----------------------------------------------------------

bool EquivalenceReport::AllPass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(),
                     [](const EquivalenceCheck& c) { return c.ok(); });
}

EquivalenceReport EquivalenceExperiment(const PreparedBins& prepared,
                                        GdpBudget mu_s, GdpBudget mu_t,
                                        const EquivalenceConfig& config) {
  Require(config.repetitions >= 2, "equivalence needs at least two seeds");
  const std::size_t k_bins = prepared.size();
  const std::size_t d = prepared.dims;
  const std::size_t width = d + 1;
  const std::size_t reps = config.repetitions;
  const bool strict = config.pipeline.strict_l2;

  // direct[(k * width + i) * reps + r], likewise for synthetic.
  std::vector<double> direct(k_bins * width * reps);
  std::vector<double> synthetic(k_bins * width * reps);
  ParallelFor(reps, config.workers, [&](std::size_t r) {
    RandomSource rng(config.base_seed, r);
    RandomSource direct_rng = rng.Substream(kDirectStream);
    RandomSource synth_rng = rng.Substream(kSyntheticStream);
    PrivatizeOptions popts;
    popts.strict_l2 = strict;
    const PrivatizedSummaries priv =
        Privatize(prepared, mu_s, mu_t, direct_rng, popts);
    SynthesisOptions sopts;
    sopts.strict_l2 = strict;
    const BinSums sums =
        Aggregate(Generate(prepared, mu_s, mu_t, synth_rng, sopts));
    for (std::size_t k = 0; k < k_bins; ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      for (std::size_t i = 0; i <= d; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const std::size_t slot = (k * width + i) * reps + r;
        direct[slot] = i < d ? priv.sums_x(kk, ii) : priv.sums_y(kk);
        synthetic[slot] = i < d ? sums.sums_x(kk, ii) : sums.sums_y(kk);
      }
    }
  });

  EquivalenceReport report;
  report.bins = k_bins;
  report.dims = d;
  report.repetitions = reps;
  const double ks_crit = KsCriticalValue(reps, reps, config.ks_alpha);
  const double label_var = std::pow(GaussianNoiseStddev(prepared.label_bound, mu_t), 2);
  for (std::size_t k = 0; k < k_bins; ++k) {
    const BinSummary& bin = prepared.bins[k];
    const Vector sd = FeatureNoiseStddev(bin.sensitivity, mu_s, strict);
    for (std::size_t i = 0; i <= d; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const std::size_t base = (k * width + i) * reps;
      const std::span<const double> synth(synthetic.data() + base, reps);
      const std::span<const double> dir(direct.data() + base, reps);
      EquivalenceCheck c;
      c.bin = k;
      c.coordinate = i;
      c.expected_mean = i < d ? bin.sum_x(ii) : bin.sum_y;
      c.expected_var = i < d ? sd(ii) * sd(ii) : label_var;
      c.synthetic_mean = Mean(synth);
      c.synthetic_var = Variance(synth);
      c.direct_mean = Mean(dir);
      c.direct_var = Variance(dir);
      c.mean_se = std::sqrt(c.expected_var / static_cast<double>(reps));
      c.ks = KsStatistic(std::vector<double>(synth.begin(), synth.end()),
                         std::vector<double>(dir.begin(), dir.end()));
      c.ks_critical = ks_crit;
      c.mean_ok = std::fabs(c.synthetic_mean - c.expected_mean) <=
                  config.mean_z * c.mean_se;
      c.var_ok = std::fabs(c.synthetic_var / c.expected_var - 1.0) <=
                 config.var_tolerance;
      c.ks_ok = c.ks < c.ks_critical;
      report.checks.push_back(c);
    }
  }
  return report;
}

EquivalenceReport EquivalenceExperiment(const EquivalenceConfig& config) {
  RandomSource instance(config.base_seed, kInstanceStream);
  RandomSource data_rng = instance.Substream(kDataStream);
  SimulatedProblem problem = DrawProblem(config.n, config.d, config.sigma,
                                         config.label_upper, 1.0, data_rng);
  PreparedRun prep =
      PrepareRun(problem.data.x, problem.data.y, problem.domain,
                 problem.label_bound, config.pipeline, instance);
  return EquivalenceExperiment(prep.prepared, prep.budgets.sum_x,
                               prep.budgets.sum_y, config);
}

}  // namespace binagg::harness
