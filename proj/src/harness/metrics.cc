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

#include "binagg/harness/metrics.h"

#include <algorithm>
#include <cmath>

#include "binagg/error.h"

namespace binagg::harness {

double RelativeL2Error(const Vector& estimate, const Vector& truth) {
  Require(estimate.size() == truth.size(), "vectors differ in length");
  const double denom = truth.norm();
  Require(denom > 0, "true coefficient vector is zero");
  return (estimate - truth).norm() / denom;
}

double RelativeMse(const Vector& predicted, const Vector& actual) {
  Require(predicted.size() == actual.size(), "vectors differ in length");
  const double denom = actual.squaredNorm();
  Require(denom > 0, "actual vector is zero");
  return (predicted - actual).squaredNorm() / denom;
}

double Mean(std::span<const double> v) {
  Require(!v.empty(), "mean of an empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double Variance(std::span<const double> v) {
  Require(v.size() >= 2, "variance needs at least two values");
  const double m = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

double StdDev(std::span<const double> v) { return std::sqrt(Variance(v)); }

double Median(std::vector<double> v) {
  Require(!v.empty(), "median of an empty sample");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                   v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double KsStatistic(std::vector<double> a, std::vector<double> b) {
  Require(!a.empty() && !b.empty(), "KS test needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double stat = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    stat = std::max(stat, std::fabs(i / na - j / nb));
  }
  return stat;
}

double KsCriticalValue(std::size_t n, std::size_t m, double alpha) {
  Require(n > 0 && m > 0, "KS sample sizes must be positive");
  Require(alpha > 0 && alpha < 1, "alpha must lie in (0, 1)");
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace binagg::harness
