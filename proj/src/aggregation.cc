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

#include "binagg/aggregation.h"

#include <cmath>
#include <string>

#include "binagg/error.h"

namespace binagg {

double LabelBound(double lo, double hi) {
  Require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
          "label bounds must be a finite interval with lo < hi");
  return std::max(std::fabs(lo), std::fabs(hi));
}

Vector SensitivityVector(const Box& region) {
  Vector out(static_cast<Eigen::Index>(region.dims()));
  for (std::size_t i = 0; i < region.dims(); ++i) {
    out(static_cast<Eigen::Index>(i)) =
        std::max(std::fabs(region.lower(i)), std::fabs(region.upper(i)));
  }
  return out;
}

int64_t RoundCount(double x) {
  Require(std::isfinite(x), "cannot round a non-finite count");
  return static_cast<int64_t>(std::round(x));
}

std::vector<std::size_t> AssignToBins(const DataMatrix& x,
                                      const std::vector<Box>& bins,
                                      const Box& domain) {
  std::vector<std::size_t> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    const auto row = RowSpan(x, j);
    std::size_t k = 0;
    while (k < bins.size() && !bins[k].Contains(row, domain)) ++k;
    if (k == bins.size()) {
      Fail(ErrorCode::kInvalidArgument,
           "row " + std::to_string(j) + " is not covered by any bin");
    }
    out[static_cast<std::size_t>(j)] = k;
  }
  return out;
}

PreparedBins Prepare(const DataMatrix& x, const Vector& y,
                     const std::vector<Box>& bins, const Box& domain,
                     GdpBudget mu_count, double label_bound, RandomSource& rng,
                     const PrepareOptions& options) {
  Require(x.rows() == y.size(), "feature and label row counts differ");
  Require(static_cast<std::size_t>(x.cols()) == domain.dims(),
          "feature dimension does not match the domain");
  Require(!bins.empty(), "bin list is empty");
  Require(options.min_count >= 1, "min_count must be at least 1");
  Require(std::isfinite(label_bound) && label_bound > 0,
          "label bound must be positive");
  for (const Box& b : bins) {
    Require(b.dims() == domain.dims(), "bin dimension does not match domain");
  }
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    Require(std::fabs(y(j)) <= label_bound,
            "label " + std::to_string(j) + " exceeds the label bound");
  }

  const auto d = static_cast<Eigen::Index>(domain.dims());
  const std::vector<std::size_t> assignment = AssignToBins(x, bins, domain);

  std::vector<int64_t> counts(bins.size(), 0);
  Matrix sums_x = Matrix::Zero(static_cast<Eigen::Index>(bins.size()), d);
  Vector sums_y = Vector::Zero(static_cast<Eigen::Index>(bins.size()));
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    const auto k = assignment[static_cast<std::size_t>(j)];
    const auto kk = static_cast<Eigen::Index>(k);
    ++counts[k];
    sums_x.row(kk) += x.row(j);
    sums_y(kk) += y(j);
  }

  PreparedBins out;
  out.dims = domain.dims();
  out.label_bound = label_bound;
  // One draw per bin in bin order, independent of which bins survive.
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const double noisy =
        options.zero_noise
            ? static_cast<double>(counts[k])
            : GaussianMechanism(static_cast<double>(counts[k]), 1.0, mu_count,
                                rng);
    const int64_t rounded = RoundCount(noisy);
    if (rounded < options.min_count) continue;
    const auto kk = static_cast<Eigen::Index>(k);
    out.bins.push_back(BinSummary{bins[k], counts[k], rounded,
                                  sums_x.row(kk).transpose(), sums_y(kk),
                                  SensitivityVector(bins[k])});
  }
  if (out.bins.empty()) {
    Fail(ErrorCode::kEmptyResult, "every bin was discarded after privatizing "
                                  "counts");
  }
  return out;
}

}  // namespace binagg
