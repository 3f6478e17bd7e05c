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

#include "binagg/gdp.h"

#include <cmath>
#include <string>

#include "binagg/error.h"
#include "binagg/normal.h"

namespace binagg {

GdpBudget::GdpBudget(double mu) : mu_(mu) {
  Require(std::isfinite(mu) && mu > 0,
          "GDP budget must be positive and finite, got " + std::to_string(mu));
}

GdpBudget BudgetAllocation::Total() const {
  const std::array<GdpBudget, 4> parts = {bin, count, sum_x, sum_y};
  return Compose(parts);
}

double GaussianNoiseStddev(double sensitivity, GdpBudget mu) {
  Require(std::isfinite(sensitivity) && sensitivity >= 0,
          "sensitivity must be finite and non-negative");
  return sensitivity / mu.mu();
}

double GaussianMechanism(double value, double sensitivity, GdpBudget mu,
                         RandomSource& rng) {
  Require(std::isfinite(value), "Gaussian mechanism input must be finite");
  const double stddev = GaussianNoiseStddev(sensitivity, mu);
  if (stddev == 0.0) return value;
  return value + stddev * rng.StandardNormal();
}

GdpBudget Compose(std::span<const GdpBudget> budgets) {
  Require(!budgets.empty(), "cannot compose an empty list of budgets");
  // hypot-style accumulation keeps exact results such as (3, 4) -> 5.
  double total = 0.0;
  for (const GdpBudget& b : budgets) total = std::hypot(total, b.mu());
  return GdpBudget(total);
}

BudgetAllocation Allocate(GdpBudget total, const BudgetRatios& r) {
  for (double v : {r.bin, r.count, r.sum_x, r.sum_y}) {
    Require(std::isfinite(v) && v > 0, "budget ratios must all be positive");
  }
  const double norm = std::sqrt(r.bin * r.bin + r.count * r.count +
                                r.sum_x * r.sum_x + r.sum_y * r.sum_y);
  const double scale = total.mu() / norm;
  return BudgetAllocation{GdpBudget(scale * r.bin), GdpBudget(scale * r.count),
                          GdpBudget(scale * r.sum_x),
                          GdpBudget(scale * r.sum_y)};
}

ApproxDpParams GdpToApproxDp(GdpBudget mu, double epsilon) {
  Require(std::isfinite(epsilon) && epsilon >= 0,
          "epsilon must be finite and non-negative");
  const double m = mu.mu();
  const double a = StdNormalCdf(-epsilon / m + m / 2);
  const double b = std::exp(epsilon) * StdNormalCdf(-epsilon / m - m / 2);
  return ApproxDpParams{epsilon, a - b};
}

ApproxDpParams GdpToApproxDpAtDelta(GdpBudget mu, double delta) {
  Require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  if (GdpToApproxDp(mu, 0.0).delta <= delta) return {0.0, delta};
  // delta(eps) is decreasing; bracket, then bisect.
  double lo = 0.0;
  double hi = 1.0;
  while (GdpToApproxDp(mu, hi).delta > delta) {
    lo = hi;
    hi *= 2;
    Require(hi < 700, "delta is too small to reach at this mu");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (GdpToApproxDp(mu, mid).delta > delta ? lo : hi) = mid;
  }
  return {hi, delta};
}

GdpBudget PureDpToGdp(double epsilon) {
  Require(std::isfinite(epsilon) && epsilon > 0, "epsilon must be positive");
  // 1 / (1 + e^eps), written so large epsilon does not overflow.
  const double tail = std::exp(-epsilon);
  const double p = tail / (1.0 + tail);
  return GdpBudget(-2.0 * StdNormalQuantile(p));
}

double GdpToPureDp(GdpBudget mu) {
  const double half = mu.mu() / 2;
  return std::log(StdNormalCdf(half)) - std::log(StdNormalCdf(-half));
}

double SampleLaplace(double scale, RandomSource& rng) {
  return rng.Laplace(scale);
}

}  // namespace binagg
