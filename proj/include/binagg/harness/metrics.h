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

#ifndef BINAGG_HARNESS_METRICS_H_
#define BINAGG_HARNESS_METRICS_H_

#include <span>
#include <vector>

#include "binagg/types.h"

namespace binagg::harness {

// ||est - truth||_2 / ||truth||_2.
double RelativeL2Error(const Vector& estimate, const Vector& truth);

// ||pred - actual||_2^2 / ||actual||_2^2.
double RelativeMse(const Vector& predicted, const Vector& actual);

double Mean(std::span<const double> v);
// Sample standard deviation (divisor n - 1).
double StdDev(std::span<const double> v);
double Variance(std::span<const double> v);
double Median(std::vector<double> v);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double KsStatistic(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value of the two-sample KS statistic at level alpha:
// sqrt(-ln(alpha / 2) / 2) * sqrt((n + m) / (n m)).
double KsCriticalValue(std::size_t n, std::size_t m, double alpha);

}  // namespace binagg::harness

#endif  // BINAGG_HARNESS_METRICS_H_
