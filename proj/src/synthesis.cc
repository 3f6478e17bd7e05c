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

#include "binagg/synthesis.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "binagg/error.h"
#include "binagg/format.h"

namespace binagg {

SyntheticDataset Generate(const PreparedBins& prepared, GdpBudget mu_s,
                          GdpBudget mu_t, RandomSource& rng,
                          const SynthesisOptions& options) {
  Require(!prepared.bins.empty(), "prepared bins are empty");
  const auto d = static_cast<Eigen::Index>(prepared.dims);
  const double label_sd = GaussianNoiseStddev(prepared.label_bound, mu_t);

  SyntheticDataset out;
  out.bins = prepared.size();
  out.dims = prepared.dims;
  for (std::size_t k = 0; k < prepared.size(); ++k) {
    const BinSummary& bin = prepared.bins[k];
    Require(bin.noisy_count >= 1, "noisy count must be positive");
    Require(bin.sum_x.size() == d, "bin sum has the wrong dimension");
    const double c = static_cast<double>(bin.noisy_count);
    // Per-record noise has variance c * Delta^2 / mu^2 before dividing by c.
    const Vector sd = FeatureNoiseStddev(bin.sensitivity, mu_s,
                                         options.strict_l2) *
                      std::sqrt(c);
    const double y_sd = label_sd * std::sqrt(c);
    for (int64_t i = 0; i < bin.noisy_count; ++i) {
      SyntheticRecord rec{Vector(d), 0.0, k};
      for (Eigen::Index j = 0; j < d; ++j) {
        const double noise =
            options.zero_noise ? 0.0 : sd(j) * rng.StandardNormal();
        rec.x(j) = (bin.sum_x(j) + noise) / c;
      }
      const double noise = options.zero_noise ? 0.0 : y_sd * rng.StandardNormal();
      rec.y = (bin.sum_y + noise) / c;
      if (options.clamp_to_bin) {
        for (Eigen::Index j = 0; j < d && static_cast<std::size_t>(j) <
                                               bin.region.dims();
             ++j) {
          const auto jj = static_cast<std::size_t>(j);
          rec.x(j) = std::clamp(rec.x(j), bin.region.lower(jj),
                                bin.region.upper(jj));
        }
      }
      out.records.push_back(std::move(rec));
    }
  }

  if (options.shuffle) {
    RandomSource order = rng.Substream(0x5348554646ULL);
    for (std::size_t i = out.records.size(); i > 1; --i) {
      std::swap(out.records[i - 1], out.records[order.Index(i)]);
    }
  }
  return out;
}

BinSums Aggregate(const SyntheticDataset& dataset) {
  const auto k_bins = static_cast<Eigen::Index>(dataset.bins);
  const auto d = static_cast<Eigen::Index>(dataset.dims);
  BinSums out{Matrix::Zero(k_bins, d), Vector::Zero(k_bins),
              Vector::Zero(k_bins)};
  for (const SyntheticRecord& rec : dataset.records) {
    Require(rec.bin < dataset.bins, "record refers to an unknown bin");
    const auto k = static_cast<Eigen::Index>(rec.bin);
    out.sums_x.row(k) += rec.x.transpose();
    out.sums_y(k) += rec.y;
    out.counts(k) += 1.0;
  }
  return out;
}

PrivatizedSummaries SummariesFromSynthetic(const SyntheticDataset& dataset,
                                           const PreparedBins& prepared,
                                           GdpBudget mu_s, bool strict_l2) {
  Require(dataset.bins == prepared.size(),
          "synthetic dataset and prepared bins disagree on K");
  BinSums sums = Aggregate(dataset);
  PrivatizedSummaries out;
  out.sums_x = std::move(sums.sums_x);
  out.sums_y = std::move(sums.sums_y);
  out.weights.resize(out.sums_y.size());
  out.noise_var.resize(out.sums_x.rows(), out.sums_x.cols());
  for (std::size_t k = 0; k < prepared.size(); ++k) {
    const BinSummary& bin = prepared.bins[k];
    const auto kk = static_cast<Eigen::Index>(k);
    out.weights(kk) = 1.0 / static_cast<double>(bin.noisy_count);
    out.noise_var.row(kk) = FeatureNoiseStddev(bin.sensitivity, mu_s, strict_l2)
                                .array()
                                .square()
                                .matrix()
                                .transpose();
  }
  return out;
}

void WriteSyntheticCsv(const SyntheticDataset& dataset, std::ostream& out,
                       bool include_bin) {
  for (std::size_t i = 0; i < dataset.dims; ++i) {
    out << "x_" << (i + 1) << ',';
  }
  out << 'y';
  if (include_bin) out << ",bin";
  out << '\n';
  for (const SyntheticRecord& rec : dataset.records) {
    for (Eigen::Index i = 0; i < rec.x.size(); ++i) {
      out << FormatDouble(rec.x(i)) << ',';
    }
    out << FormatDouble(rec.y);
    if (include_bin) out << ',' << rec.bin;
    out << '\n';
  }
}

}  // namespace binagg
