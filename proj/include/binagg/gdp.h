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

// Gaussian differential privacy primitives: budgets, composition, the
// Gaussian mechanism and conversions to (epsilon, delta)-DP and pure DP.

#ifndef BINAGG_GDP_H_
#define BINAGG_GDP_H_

#include <array>
#include <span>

#include "binagg/random.h"

namespace binagg {

// A mu-GDP privacy parameter. Always positive and finite.
class GdpBudget {
 public:
  explicit GdpBudget(double mu);

  double mu() const { return mu_; }

  friend bool operator==(const GdpBudget&, const GdpBudget&) = default;

 private:
  double mu_;
};

// Relative weights for (binning, counts, feature sums, label sums).
struct BudgetRatios {
  double bin = 1.0;
  double count = 3.0;
  double sum_x = 3.0;
  double sum_y = 3.0;
};

// The four per-stage budgets of the binning-aggregation pipeline.
struct BudgetAllocation {
  GdpBudget bin;
  GdpBudget count;
  GdpBudget sum_x;
  GdpBudget sum_y;

  // Composed guarantee of the whole pipeline.
  GdpBudget Total() const;
};

struct ApproxDpParams {
  double epsilon;
  double delta;
};

// Returns value + N(0, (sensitivity / mu)^2). Zero sensitivity returns value.
double GaussianMechanism(double value, double sensitivity, GdpBudget mu,
                         RandomSource& rng);

// Noise standard deviation used by GaussianMechanism.
double GaussianNoiseStddev(double sensitivity, GdpBudget mu);

// sqrt(sum mu_i^2). Throws on an empty list.
GdpBudget Compose(std::span<const GdpBudget> budgets);

// Splits `total` proportionally to `ratios`, normalised so that the four
// parts compose back to `total`.
BudgetAllocation Allocate(GdpBudget total, const BudgetRatios& ratios);

// The delta(epsilon) curve of a mu-GDP mechanism:
//   Phi(-eps/mu + mu/2) - e^eps Phi(-eps/mu - mu/2).
ApproxDpParams GdpToApproxDp(GdpBudget mu, double epsilon);

// Smallest epsilon >= 0 whose delta(epsilon) is at most `delta`, found by
// bisection to ~1e-12. delta must lie in (0, 1).
ApproxDpParams GdpToApproxDpAtDelta(GdpBudget mu, double delta);

// mu = -2 Phi^{-1}(1 / (1 + e^eps)) for an eps-DP mechanism.
//
// No upper bound on mu is enforced; the formula grows without bound as
// epsilon increases.
GdpBudget PureDpToGdp(double epsilon);

// Closed-form inverse of PureDpToGdp: eps = ln(Phi(mu/2) / Phi(-mu/2)).
double GdpToPureDp(GdpBudget mu);

// Draw from Laplace(0, scale).
double SampleLaplace(double scale, RandomSource& rng);

}  // namespace binagg

#endif  // BINAGG_GDP_H_
