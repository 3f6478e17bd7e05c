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

#include "binagg/regression.h"

#include <cmath>
#include <string>

#include "binagg/error.h"
#include "binagg/normal.h"

namespace binagg {
namespace {

void RequireEnoughBins(const PrivatizedSummaries& priv) {
  if (priv.bins() <= priv.dims()) {
    Fail(ErrorCode::kInsufficientBins,
         "need more bins than features: K = " + std::to_string(priv.bins()) +
             ", d = " + std::to_string(priv.dims()));
  }
}

// Singular values of a square or tall matrix; throws when the implied
// condition number of A'A (or of A itself when square) exceeds the guard.
void CheckConditioning(const Matrix& a, bool gram_of_a, const char* what) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  double cond = (smin > 0 && std::isfinite(smax)) ? smax / smin
                                                  : INFINITY;
  if (gram_of_a) cond *= cond;
  if (!(cond <= kMaxConditionNumber)) {
    Fail(ErrorCode::kSingularSystem,
         std::string(what) + " is singular or ill-conditioned (condition "
                             "estimate " + std::to_string(cond) + ")");
  }
}

Vector SolveGuarded(const Matrix& a, const Vector& b, const char* what) {
  CheckConditioning(a, false, what);
  return a.colPivHouseholderQr().solve(b);
}

Matrix WeightedGram(const PrivatizedSummaries& priv) {
  return priv.sums_x.transpose() * priv.weights.asDiagonal() * priv.sums_x;
}

Vector WeightedCross(const PrivatizedSummaries& priv) {
  return priv.sums_x.transpose() * priv.weights.asDiagonal() * priv.sums_y;
}

// sum_k w_k D_k as a diagonal vector.
Vector WeightedNoiseDiagonal(const PrivatizedSummaries& priv) {
  return priv.noise_var.transpose() * priv.weights;
}

}  // namespace

Vector FeatureNoiseStddev(const Vector& sensitivity, GdpBudget mu_s,
                          bool strict_l2) {
  if (strict_l2) {
    return Vector::Constant(sensitivity.size(), sensitivity.norm() / mu_s.mu());
  }
  return sensitivity / mu_s.mu();
}

PrivatizedSummaries Privatize(const PreparedBins& prepared, GdpBudget mu_s,
                              GdpBudget mu_t, RandomSource& rng,
                              const PrivatizeOptions& options) {
  Require(!prepared.bins.empty(), "prepared bins are empty");
  const auto k_bins = static_cast<Eigen::Index>(prepared.size());
  const auto d = static_cast<Eigen::Index>(prepared.dims);

  PrivatizedSummaries out;
  out.sums_x.resize(k_bins, d);
  out.sums_y.resize(k_bins);
  out.weights.resize(k_bins);
  out.noise_var.resize(k_bins, d);
  const double label_sd = GaussianNoiseStddev(prepared.label_bound, mu_t);

  for (Eigen::Index k = 0; k < k_bins; ++k) {
    const BinSummary& bin = prepared.bins[static_cast<std::size_t>(k)];
    Require(bin.sum_x.size() == d, "bin sum has the wrong dimension");
    Require(bin.noisy_count >= 1, "noisy count must be positive");
    out.weights(k) = 1.0 / static_cast<double>(bin.noisy_count);
    if (options.zero_noise) {
      out.sums_x.row(k) = bin.sum_x.transpose();
      out.sums_y(k) = bin.sum_y;
      out.noise_var.row(k).setZero();
      continue;
    }
    const Vector sd =
        FeatureNoiseStddev(bin.sensitivity, mu_s, options.strict_l2);
    for (Eigen::Index i = 0; i < d; ++i) {
      out.sums_x(k, i) = bin.sum_x(i) + sd(i) * rng.StandardNormal();
    }
    out.sums_y(k) = bin.sum_y + label_sd * rng.StandardNormal();
    out.noise_var.row(k) = sd.array().square().matrix().transpose();
  }
  return out;
}

PrivatizedSummaries ExactSummaries(const PreparedBins& prepared) {
  RandomSource unused(0, 0);
  return Privatize(prepared, GdpBudget(1.0), GdpBudget(1.0), unused,
                   PrivatizeOptions{.zero_noise = true});
}

Vector FitDebiased(const PrivatizedSummaries& priv, CorrectionScaling scaling) {
  RequireEnoughBins(priv);
  Vector correction = WeightedNoiseDiagonal(priv);
  if (scaling == CorrectionScaling::kAveraged) {
    correction /= static_cast<double>(priv.bins());
  }
  Matrix gram = WeightedGram(priv);
  gram.diagonal() -= correction;
  return SolveGuarded(gram, WeightedCross(priv), "corrected Gram matrix");
}

Vector FitNaive(const PrivatizedSummaries& priv) {
  RequireEnoughBins(priv);
  return SolveGuarded(WeightedGram(priv), WeightedCross(priv), "Gram matrix");
}

Matrix EstimatingContributions(const PrivatizedSummaries& priv,
                               const Vector& beta) {
  Require(beta.size() == static_cast<Eigen::Index>(priv.dims()),
          "coefficient vector has the wrong dimension");
  const Vector residual = priv.sums_y - priv.sums_x * beta;
  Matrix q(priv.sums_x.rows(), priv.sums_x.cols());
  for (Eigen::Index k = 0; k < q.rows(); ++k) {
    const double w = priv.weights(k);
    q.row(k) = w * residual(k) * priv.sums_x.row(k) +
               w * priv.noise_var.row(k).cwiseProduct(beta.transpose());
  }
  return q;
}

Matrix EstimatingJacobian(const PrivatizedSummaries& priv) {
  const double k_bins = static_cast<double>(priv.bins());
  Matrix m = WeightedGram(priv) / k_bins;
  m.diagonal() -= WeightedNoiseDiagonal(priv) / k_bins;
  return m;
}

Matrix SandwichCovariance(const PrivatizedSummaries& priv, const Vector& beta) {
  RequireEnoughBins(priv);
  const double k_bins = static_cast<double>(priv.bins());
  const double d = static_cast<double>(priv.dims());
  const Matrix q = EstimatingContributions(priv, beta);
  const Matrix h = (q.transpose() * q) / (k_bins * (k_bins - d));
  const Matrix m = EstimatingJacobian(priv);
  CheckConditioning(m, false, "estimating-equation Jacobian");
  const auto qr = m.colPivHouseholderQr();
  // M is symmetric, so M^{-1} H M^{-1} = X M^{-1} with X = M^{-1} H, and
  // (M^{-1} X')' = X M^{-1}.
  const Matrix left = qr.solve(h);
  Matrix sigma = qr.solve(left.transpose()).transpose();
  return 0.5 * (sigma + sigma.transpose());
}

Matrix NaiveCovariance(const PrivatizedSummaries& priv, double sigma2) {
  Require(std::isfinite(sigma2) && sigma2 >= 0,
          "error variance must be finite and non-negative");
  RequireEnoughBins(priv);
  const Matrix gram = WeightedGram(priv);
  CheckConditioning(gram, false, "Gram matrix");
  const auto d = static_cast<Eigen::Index>(priv.dims());
  Matrix inv = gram.colPivHouseholderQr().solve(Matrix::Identity(d, d));
  inv = 0.5 * (inv + inv.transpose());
  return sigma2 * inv;
}

double WeightedResidualVariance(const PrivatizedSummaries& priv,
                                const Vector& beta) {
  RequireEnoughBins(priv);
  const Vector residual = priv.sums_y - priv.sums_x * beta;
  const double rss = (priv.weights.array() * residual.array().square()).sum();
  return rss / static_cast<double>(priv.bins() - priv.dims());
}

double CriticalValue(double alpha) {
  Require(alpha > 0 && alpha < 1, "alpha must lie in (0, 1)");
  return StdNormalQuantile(1.0 - alpha / 2.0);
}

std::vector<Interval> ConfidenceIntervals(const Vector& beta,
                                          const Matrix& covariance,
                                          double alpha) {
  Require(covariance.rows() == beta.size() && covariance.cols() == beta.size(),
          "covariance shape does not match the coefficients");
  const double z = CriticalValue(alpha);
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(beta.size()));
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    const double se = std::sqrt(std::max(covariance(j, j), 0.0));
    out.push_back(Interval{beta(j) - z * se, beta(j) + z * se});
  }
  return out;
}

Vector PrivateFit::StandardErrors() const {
  return sigma.diagonal().cwiseMax(0.0).cwiseSqrt();
}

PrivateFit FitPrivate(const PrivatizedSummaries& priv,
                      const FitOptions& options) {
  PrivateFit fit;
  fit.beta = FitDebiased(priv, options.scaling);
  fit.sigma = SandwichCovariance(priv, fit.beta);
  fit.bins = priv.bins();
  fit.dims = priv.dims();
  fit.alpha = options.alpha;
  fit.intervals = ConfidenceIntervals(fit.beta, fit.sigma, options.alpha);
  return fit;
}

Vector WlsExact(const Matrix& s, const Vector& w, const Vector& t) {
  Require(s.rows() == w.size() && s.rows() == t.size(),
          "WLS inputs have mismatched lengths");
  Require(s.rows() >= s.cols() && s.cols() > 0, "WLS system is underdetermined");
  Require((w.array() >= 0).all(), "WLS weights must be non-negative");
  const Vector root_w = w.cwiseSqrt();
  const Matrix design = root_w.asDiagonal() * s;
  CheckConditioning(design, true, "WLS design");
  return design.colPivHouseholderQr().solve(root_w.cwiseProduct(t));
}

Vector OlsExact(const DataMatrix& x, const Vector& y) {
  return WlsExact(Matrix(x), Vector::Ones(x.rows()), y);
}

PreparedBins WithIntercept(const PreparedBins& prepared) {
  PreparedBins out = prepared;
  out.dims = prepared.dims + 1;
  for (BinSummary& bin : out.bins) {
    const auto d = bin.sum_x.size();
    bin.sum_x.conservativeResize(d + 1);
    bin.sum_x(d) = static_cast<double>(bin.true_count);
    bin.sensitivity.conservativeResize(d + 1);
    bin.sensitivity(d) = 1.0;
  }
  return out;
}

}  // namespace binagg
