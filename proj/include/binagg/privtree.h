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

// Differentially private recursive partitioning (PrivTree) with a binary
// split along the widest side of each node. Only the leaf regions are
// released; node counts never leave this module.

#ifndef BINAGG_PRIVTREE_H_
#define BINAGG_PRIVTREE_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "binagg/box.h"
#include "binagg/gdp.h"
#include "binagg/random.h"
#include "binagg/types.h"

namespace binagg {

inline constexpr double kDefaultTheta = 0.0;
inline constexpr int kDefaultMaxDepth = 40;

struct PrivTreeConfig {
  double theta = kDefaultTheta;  // split threshold
  double lambda = 1.0;           // Laplace scale
  double delta_decay = 0.0;      // per-level count penalty
  int max_depth = kDefaultMaxDepth;
};

// Calibrates an epsilon-DP tree for branching factor 2:
//   lambda = 3 / epsilon, delta_decay = lambda * ln 2.
PrivTreeConfig CalibrateForEpsilon(double epsilon, double theta = kDefaultTheta,
                                   int max_depth = kDefaultMaxDepth);

// Same, with epsilon obtained from a GDP budget through the inverse of the
// pure-DP to GDP conversion, so the tree is mu_bin-GDP.
PrivTreeConfig Calibrate(GdpBudget mu_bin, double theta = kDefaultTheta,
                         int max_depth = kDefaultMaxDepth);

// Returns the leaf regions of a PrivTree built over `data`, whose rows must
// all lie inside `domain`. Nodes are visited breadth first with the lower
// child queued before the upper child; one Laplace draw is made per visited
// node in that order.
std::vector<Box> BuildPrivTree(const DataMatrix& data, const Box& domain,
                               const PrivTreeConfig& config, RandomSource& rng);

namespace internal {

struct TreeNode {
  Box region;
  int depth;
  std::size_t count;
};

// Tree construction with a caller-supplied noise source. Exposed for oracle
// tests (e.g. a noise source that always returns 0); it is not a private
// release path. `visited`, when non-null, receives every node in visit order.
std::vector<Box> BuildPrivTreeWithNoise(const DataMatrix& data,
                                        const Box& domain,
                                        const PrivTreeConfig& config,
                                        const std::function<double()>& noise,
                                        std::vector<TreeNode>* visited);

}  // namespace internal
}  // namespace binagg

#endif  // BINAGG_PRIVTREE_H_
