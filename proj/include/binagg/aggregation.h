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

// Binning-aggregation preparation: privatized bin counts plus the exact
// per-bin feature and label sums that the regression and synthesis stages
// privatize later.

#ifndef BINAGG_AGGREGATION_H_
#define BINAGG_AGGREGATION_H_

#include <cstdint>
#include <vector>

#include "binagg/box.h"
#include "binagg/gdp.h"
#include "binagg/random.h"
#include "binagg/types.h"

namespace binagg {

inline constexpr int64_t kDefaultMinCount = 2;

struct BinSummary {
  Box region;
  int64_t true_count;  // c_k; internal, never released
  int64_t noisy_count;  // rounded privatized count, >= min_count
  Vector sum_x;         // exact per-bin feature sums
  double sum_y;         // exact per-bin label sum
  Vector sensitivity;   // max(|L_ki|, |U_ki|) per coordinate
};

struct PreparedBins {
  std::vector<BinSummary> bins;
  std::size_t dims = 0;
  double label_bound = 1.0;  // B_y

  std::size_t size() const { return bins.size(); }
};

struct PrepareOptions {
  int64_t min_count = kDefaultMinCount;
  // Non-private debug path: counts are released without noise.
  bool zero_noise = false;
};

// Label sensitivity for an interval (lo, hi): max(|lo|, |hi|).
double LabelBound(double lo, double hi);

Vector SensitivityVector(const Box& region);

// Round half away from zero.
int64_t RoundCount(double x);

// Assigns each row of `x` to the unique bin containing it (half-open
// membership relative to `domain`). Throws if a row falls in no bin.
std::vector<std::size_t> AssignToBins(const DataMatrix& x,
                                      const std::vector<Box>& bins,
                                      const Box& domain);

// Privatizes counts with N(0, 1/mu_c^2) noise, rounds, drops bins whose
// noisy count is below min_count, and attaches exact sums and sensitivity
// vectors to the survivors. Throws kEmptyResult when no bin survives.
PreparedBins Prepare(const DataMatrix& x, const Vector& y,
                     const std::vector<Box>& bins, const Box& domain,
                     GdpBudget mu_count, double label_bound, RandomSource& rng,
                     const PrepareOptions& options = {});

}  // namespace binagg

#endif  // BINAGG_AGGREGATION_H_
