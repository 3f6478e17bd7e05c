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

#include "binagg/privtree.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "binagg/error.h"

namespace binagg {
namespace {

// (2 kappa - 1) / (kappa - 1) with kappa = 2.
constexpr double kLambdaNumerator = 3.0;

struct PendingNode {
  Box region;
  int depth;
  std::vector<Eigen::Index> rows;
};

}  // namespace

PrivTreeConfig CalibrateForEpsilon(double epsilon, double theta,
                                   int max_depth) {
  Require(std::isfinite(epsilon) && epsilon > 0, "epsilon must be positive");
  Require(max_depth >= 1, "max_depth must be at least 1");
  Require(!std::isnan(theta), "theta must not be NaN");
  PrivTreeConfig config;
  config.theta = theta;
  config.lambda = kLambdaNumerator / epsilon;
  config.delta_decay = config.lambda * std::numbers::ln2;
  config.max_depth = max_depth;
  return config;
}

PrivTreeConfig Calibrate(GdpBudget mu_bin, double theta, int max_depth) {
  return CalibrateForEpsilon(GdpToPureDp(mu_bin), theta, max_depth);
}

std::vector<Box> BuildPrivTree(const DataMatrix& data, const Box& domain,
                               const PrivTreeConfig& config,
                               RandomSource& rng) {
  Require(std::isfinite(config.lambda) && config.lambda > 0,
          "PrivTree lambda must be positive");
  return internal::BuildPrivTreeWithNoise(
      data, domain, config, [&rng, &config] { return rng.Laplace(config.lambda); },
      nullptr);
}

namespace internal {

std::vector<Box> BuildPrivTreeWithNoise(const DataMatrix& data,
                                        const Box& domain,
                                        const PrivTreeConfig& config,
                                        const std::function<double()>& noise,
                                        std::vector<TreeNode>* visited) {
  Require(static_cast<std::size_t>(data.cols()) == domain.dims() ||
              data.rows() == 0,
          "data dimension does not match the domain");
  Require(config.max_depth >= 1, "max_depth must be at least 1");
  Require(std::isfinite(config.delta_decay) && config.delta_decay >= 0,
          "delta_decay must be finite and non-negative");

  PendingNode root{domain, 0, {}};
  root.rows.reserve(static_cast<std::size_t>(data.rows()));
  for (Eigen::Index j = 0; j < data.rows(); ++j) {
    Require(domain.ContainsClosed(RowSpan(data, j)),
            "row " + std::to_string(j) + " lies outside the domain");
    root.rows.push_back(j);
  }

  std::vector<Box> leaves;
  std::deque<PendingNode> queue;
  queue.push_back(std::move(root));
  while (!queue.empty()) {
    PendingNode node = std::move(queue.front());
    queue.pop_front();

    const double count = static_cast<double>(node.rows.size());
    double biased = count - node.depth * config.delta_decay;
    biased = std::max(biased, config.theta - config.delta_decay);
    const double noisy = biased + noise();
    if (visited != nullptr) {
      visited->push_back(TreeNode{node.region, node.depth, node.rows.size()});
    }

    if (!(noisy > config.theta) || node.depth >= config.max_depth) {
      leaves.push_back(std::move(node.region));
      continue;
    }

    const std::size_t dim = node.region.WidestDimension();
    auto [lo_box, hi_box] = node.region.Split(dim);
    const double mid = hi_box.lower(dim);
    PendingNode lo{std::move(lo_box), node.depth + 1, {}};
    PendingNode hi{std::move(hi_box), node.depth + 1, {}};
    for (Eigen::Index j : node.rows) {
      (data(j, static_cast<Eigen::Index>(dim)) < mid ? lo : hi).rows.push_back(j);
    }
    queue.push_back(std::move(lo));
    queue.push_back(std::move(hi));
  }
  return leaves;
}

}  // namespace internal
}  // namespace binagg
