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

// Monte-Carlo experiment protocols. Repetition r always draws from
// RandomSource(base_seed, r), so results do not depend on the number of
// worker threads.

#ifndef BINAGG_HARNESS_EXPERIMENTS_H_
#define BINAGG_HARNESS_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "binagg/aggregation.h"
#include "binagg/gdp.h"
#include "binagg/harness/pipeline.h"
#include "binagg/types.h"

namespace binagg::harness {

inline constexpr uint64_t kDefaultSeed = 20240917;

struct SimulationConfig {
  std::size_t n = 1000;
  std::size_t d = 5;
  double sigma = 1.0;
  PipelineConfig pipeline;
  // Upper end of the label interval (0, B); DefaultLabelUpper(d) if unset.
  std::optional<double> label_upper;
  // Multiplies the feature and label bounds (loose-bounds study).
  double bound_scale = 1.0;
  std::size_t repetitions = 2000;
  uint64_t base_seed = kDefaultSeed;
  std::size_t workers = 0;  // 0: one per hardware thread
  bool record_timing = false;
};

// Runs fn(0..count-1) on `workers` threads. Exceptions propagate.
void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn);

// ---- Coverage study --------------------------------------------------------

struct CoverageRep {
  std::size_t rep = 0;
  bool ok = false;
  std::string error;
  std::size_t bins = 0;
  Vector truth;
  Vector beta;
  Vector se;        // sqrt(diag(sandwich))
  Vector naive_se;  // sqrt(diag(sigma^2 (S'WS)^{-1}))
  double rel_error = 0.0;
  double wall_ms = 0.0;
};

struct CoordinateSummary {
  double avg_bias = 0.0;
  double empirical_sd = 0.0;
  double avg_theoretical_sd = 0.0;
  double naive_theoretical_sd = 0.0;
  double coverage = 0.0;
  double naive_coverage = 0.0;
};

struct CoverageReport {
  SimulationConfig config;
  double z = 0.0;
  std::vector<CoverageRep> reps;
  std::vector<CoordinateSummary> summary;
  std::size_t failures = 0;
  // Whether se_j > naive_se_j for every coordinate of every successful rep.
  bool debiased_exceeds_naive = false;
};

CoverageReport CoverageExperiment(const SimulationConfig& config);

// Recomputes the aggregate rows from per-repetition records. Intervals are
// beta_j +- z se_j for both the debiased and the naive standard errors.
std::vector<CoordinateSummary> SummarizeCoverage(
    const std::vector<CoverageRep>& reps, std::size_t d, double z);

// ---- Error curve / loose bounds -------------------------------------------

struct ErrorCurveRow {
  std::size_t n = 0;
  std::size_t rep = 0;
  bool ok = false;
  std::string error;
  std::size_t bins = 0;
  double binagg_error = 0.0;
  double ols_error = 0.0;
  double wall_ms = 0.0;
};

struct ErrorCurvePoint {
  std::size_t n = 0;
  double mean_binagg_error = 0.0;
  double sd_binagg_error = 0.0;
  double mean_ols_error = 0.0;
  double median_bins = 0.0;
  std::size_t failures = 0;
};

struct ErrorCurveReport {
  SimulationConfig config;
  std::vector<std::size_t> n_grid;
  std::vector<ErrorCurveRow> rows;
  std::vector<ErrorCurvePoint> points;
};

ErrorCurveReport ErrorCurveExperiment(const SimulationConfig& config,
                                      const std::vector<std::size_t>& n_grid);

std::vector<ErrorCurvePoint> SummarizeErrorCurve(
    const std::vector<ErrorCurveRow>& rows,
    const std::vector<std::size_t>& n_grid);

// ---- Synthetic/direct equivalence -----------------------------------------

struct EquivalenceConfig {
  std::size_t n = 400;
  std::size_t d = 1;
  double sigma = 1.0;
  PipelineConfig pipeline;
  std::optional<double> label_upper;
  std::size_t repetitions = 20000;
  uint64_t base_seed = kDefaultSeed;
  double ks_alpha = 0.01;
  double mean_z = 4.0;
  double var_tolerance = 0.05;
  std::size_t workers = 0;
};

struct EquivalenceCheck {
  std::size_t bin = 0;
  std::size_t coordinate = 0;  // d means the label sum
  double expected_mean = 0.0;
  double expected_var = 0.0;
  double synthetic_mean = 0.0;
  double synthetic_var = 0.0;
  double direct_mean = 0.0;
  double direct_var = 0.0;
  double mean_se = 0.0;
  double ks = 0.0;
  double ks_critical = 0.0;
  bool mean_ok = false;
  bool var_ok = false;
  bool ks_ok = false;

  bool ok() const { return mean_ok && var_ok && ks_ok; }
};

struct EquivalenceReport {
  std::size_t bins = 0;
  std::size_t dims = 0;
  std::size_t repetitions = 0;
  std::vector<EquivalenceCheck> checks;

  bool AllPass() const;
};

// Compares aggregated synthetic sums against direct privatized sums over
// many seeds, on one fixed set of prepared bins.
EquivalenceReport EquivalenceExperiment(const PreparedBins& prepared,
                                        GdpBudget mu_s, GdpBudget mu_t,
                                        const EquivalenceConfig& config);

// Builds the prepared bins from a simulated dataset, then runs the above.
EquivalenceReport EquivalenceExperiment(const EquivalenceConfig& config);

}  // namespace binagg::harness

#endif  // BINAGG_HARNESS_EXPERIMENTS_H_
