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

// End-to-end runs: privtree bins -> prepared bins -> regression or
// synthesis, with one substream per privacy stage.

#ifndef BINAGG_HARNESS_PIPELINE_H_
#define BINAGG_HARNESS_PIPELINE_H_

#include <cstdint>
#include <vector>

#include "binagg/aggregation.h"
#include "binagg/box.h"
#include "binagg/gdp.h"
#include "binagg/privtree.h"
#include "binagg/random.h"
#include "binagg/regression.h"
#include "binagg/synthesis.h"
#include "binagg/types.h"

namespace binagg::harness {

// Substream tags; fixed so that runs are replayable.
inline constexpr uint64_t kTreeStream = 1;
inline constexpr uint64_t kCountStream = 2;
inline constexpr uint64_t kSumStream = 3;
inline constexpr uint64_t kDataStream = 4;

struct PipelineConfig {
  double total_mu = 1.0;
  BudgetRatios ratios;
  double theta = kDefaultTheta;
  int max_depth = kDefaultMaxDepth;
  int64_t min_count = kDefaultMinCount;
  bool strict_l2 = false;
  CorrectionScaling scaling = CorrectionScaling::kEstimatingEquation;
  bool intercept = false;
  double alpha = 0.05;
  // Non-private debug path: counts and sums are released exactly. Bins are
  // still built privately.
  bool zero_noise = false;
};

struct PreparedRun {
  BudgetAllocation budgets;
  std::vector<Box> leaves;
  PreparedBins prepared;
};

// Builds bins and prepares them. Data must already lie within `domain` and
// labels within [-label_bound, label_bound].
PreparedRun PrepareRun(const DataMatrix& x, const Vector& y, const Box& domain,
                       double label_bound, const PipelineConfig& config,
                       RandomSource& rng);

struct RegressionRun {
  PreparedRun prep;
  PrivatizedSummaries priv;
  PrivateFit fit;
  Vector naive_beta;
};

RegressionRun RunRegression(const DataMatrix& x, const Vector& y,
                            const Box& domain, double label_bound,
                            const PipelineConfig& config, RandomSource& rng);

struct SynthesisRun {
  PreparedRun prep;
  SyntheticDataset dataset;
};

SynthesisRun RunSynthesis(const DataMatrix& x, const Vector& y,
                          const Box& domain, double label_bound,
                          const PipelineConfig& config,
                          const SynthesisOptions& synth_options,
                          RandomSource& rng);

}  // namespace binagg::harness

#endif  // BINAGG_HARNESS_PIPELINE_H_
