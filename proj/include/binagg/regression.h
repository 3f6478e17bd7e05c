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

// Private linear regression on bin-level aggregates.
//
// Per-bin sums are privatized with the Gaussian mechanism. The estimator
// solves the bias-corrected weighted normal equations
//
//   (S'WS - sum_k w_k D_k) b = S'W t,
//
// where D_k is the covariance of the noise added to bin k's feature sum, and
// inference uses the sandwich covariance M^{-1} H M^{-1} built from the
// per-bin estimating-function contributions
//
//   Q_k(b) = s_k w_k (t_k - s_k' b) + w_k D_k b.

#ifndef BINAGG_REGRESSION_H_
#define BINAGG_REGRESSION_H_

#include <cstddef>
#include <vector>

#include "binagg/aggregation.h"
#include "binagg/gdp.h"
#include "binagg/random.h"
#include "binagg/types.h"

namespace binagg {

inline constexpr double kMaxConditionNumber = 1e12;

struct PrivatizeOptions {
  // Non-private debug path: sums are released exactly and D_k = 0.
  bool zero_noise = false;
  // Calibrate each coordinate's noise to the l2 norm of the bin's
  // sensitivity vector instead of the coordinate's own sensitivity.
  bool strict_l2 = false;
};

struct PrivatizedSummaries {
  Matrix sums_x;     // K x d, rows are privatized feature sums
  Vector sums_y;     // K, privatized label sums
  Vector weights;    // K, 1 / noisy count
  Matrix noise_var;  // K x d, row k is the diagonal of D_k

  std::size_t bins() const { return static_cast<std::size_t>(sums_x.rows()); }
  std::size_t dims() const { return static_cast<std::size_t>(sums_x.cols()); }
};

// Per-coordinate feature-noise standard deviations for one bin.
Vector FeatureNoiseStddev(const Vector& sensitivity, GdpBudget mu_s,
                          bool strict_l2);

PrivatizedSummaries Privatize(const PreparedBins& prepared, GdpBudget mu_s,
                              GdpBudget mu_t, RandomSource& rng,
                              const PrivatizeOptions& options = {});

// Exact (non-private) summaries with the true noisy counts as weights and
// D_k = 0. Debug and oracle use only.
PrivatizedSummaries ExactSummaries(const PreparedBins& prepared);

// Which matrix is subtracted from S'WS in the point estimate.
enum class CorrectionScaling {
  // sum_k w_k D_k: the root of the estimating equation.
  kEstimatingEquation,
  // (1/K) sum_k w_k D_k, reading the correction matrix literally.
  kAveraged,
};

Vector FitDebiased(const PrivatizedSummaries& priv,
                   CorrectionScaling scaling =
                       CorrectionScaling::kEstimatingEquation);

// Uncorrected WLS on the privatized summaries.
Vector FitNaive(const PrivatizedSummaries& priv);

// Rows are Q_k(beta).
Matrix EstimatingContributions(const PrivatizedSummaries& priv,
                               const Vector& beta);

// M = S'WS / K - (1/K) sum_k w_k D_k.
Matrix EstimatingJacobian(const PrivatizedSummaries& priv);

// Sigma = M^{-1} H M^{-1} with H = sum_k Q_k Q_k' / (K (K - d)).
Matrix SandwichCovariance(const PrivatizedSummaries& priv, const Vector& beta);

// sigma2 * (S'WS)^{-1}, ignoring the privacy noise.
Matrix NaiveCovariance(const PrivatizedSummaries& priv, double sigma2);

// sum_k w_k (t_k - s_k' beta)^2 / (K - d).
double WeightedResidualVariance(const PrivatizedSummaries& priv,
                                const Vector& beta);

struct Interval {
  double lo;
  double hi;

  bool Contains(double v) const { return lo <= v && v <= hi; }
};

// z_{alpha/2}: the (1 - alpha/2) standard normal quantile.
double CriticalValue(double alpha);

// beta_j +- z_{alpha/2} sqrt(cov_jj).
std::vector<Interval> ConfidenceIntervals(const Vector& beta,
                                          const Matrix& covariance,
                                          double alpha);

struct PrivateFit {
  Vector beta;
  Matrix sigma;
  std::size_t bins = 0;
  std::size_t dims = 0;
  double alpha = 0.05;
  std::vector<Interval> intervals;

  Vector StandardErrors() const;
};

struct FitOptions {
  double alpha = 0.05;
  CorrectionScaling scaling = CorrectionScaling::kEstimatingEquation;
};

// Debiased estimate, sandwich covariance and intervals in one call.
PrivateFit FitPrivate(const PrivatizedSummaries& priv,
                      const FitOptions& options = {});

// (S'WS)^{-1} S'W t, solved through a QR factorization of W^{1/2} S.
Vector WlsExact(const Matrix& s, const Vector& w, const Vector& t);

Vector OlsExact(const DataMatrix& x, const Vector& y);

// Adds a constant feature to every bin: its sum is the true count and its
// sensitivity is 1. Regions keep their original dimension.
PreparedBins WithIntercept(const PreparedBins& prepared);

}  // namespace binagg

#endif  // BINAGG_REGRESSION_H_
