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

// Synthetic records drawn from bin-level aggregates. Summing the records of
// a bin yields a draw with the same law as the directly privatized bin sum,
// so regression on aggregated synthetic data matches the direct estimator in
// distribution.

#ifndef BINAGG_SYNTHESIS_H_
#define BINAGG_SYNTHESIS_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "binagg/aggregation.h"
#include "binagg/gdp.h"
#include "binagg/random.h"
#include "binagg/regression.h"
#include "binagg/types.h"

namespace binagg {

struct SyntheticRecord {
  Vector x;
  double y;
  std::size_t bin;
};

struct SyntheticDataset {
  std::vector<SyntheticRecord> records;
  std::size_t bins = 0;
  std::size_t dims = 0;
};

struct SynthesisOptions {
  // Non-private debug path: every record in bin k is (s_k, t_k) / c_k.
  bool zero_noise = false;
  // Same meaning as PrivatizeOptions::strict_l2.
  bool strict_l2 = false;
  // Seeded shuffle of the output order (drawn from a separate substream).
  bool shuffle = false;
  // Clamp features into their bin's region after sampling. This breaks the
  // equivalence with the direct mechanism; intended for downstream tools
  // that cannot handle out-of-range values.
  bool clamp_to_bin = false;
};

SyntheticDataset Generate(const PreparedBins& prepared, GdpBudget mu_s,
                          GdpBudget mu_t, RandomSource& rng,
                          const SynthesisOptions& options = {});

struct BinSums {
  Matrix sums_x;  // K x d
  Vector sums_y;  // K
  Vector counts;  // records per bin
};

// Per-bin sums of the synthetic records.
BinSums Aggregate(const SyntheticDataset& dataset);

// Regression inputs built from aggregated synthetic data, with weights and
// D_k taken from the same prepared bins. Fitting these is the synthetic-data
// route to the private estimator.
PrivatizedSummaries SummariesFromSynthetic(const SyntheticDataset& dataset,
                                           const PreparedBins& prepared,
                                           GdpBudget mu_s,
                                           bool strict_l2 = false);

// Comma-separated export: header x_1..x_d,y[,bin].
void WriteSyntheticCsv(const SyntheticDataset& dataset, std::ostream& out,
                       bool include_bin = true);

}  // namespace binagg

#endif  // BINAGG_SYNTHESIS_H_
