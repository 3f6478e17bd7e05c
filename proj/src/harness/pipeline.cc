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

#include "binagg/harness/pipeline.h"

namespace binagg::harness {

PreparedRun PrepareRun(const DataMatrix& x, const Vector& y, const Box& domain,
                       double label_bound, const PipelineConfig& config,
                       RandomSource& rng) {
  const BudgetAllocation budgets =
      Allocate(GdpBudget(config.total_mu), config.ratios);
  RandomSource tree_rng = rng.Substream(kTreeStream);
  RandomSource count_rng = rng.Substream(kCountStream);

  const PrivTreeConfig tree_config =
      Calibrate(budgets.bin, config.theta, config.max_depth);
  std::vector<Box> leaves = BuildPrivTree(x, domain, tree_config, tree_rng);

  PrepareOptions prep_options;
  prep_options.min_count = config.min_count;
  prep_options.zero_noise = config.zero_noise;
  PreparedBins prepared = Prepare(x, y, leaves, domain, budgets.count,
                                  label_bound, count_rng, prep_options);
  if (config.intercept) prepared = WithIntercept(prepared);
  return PreparedRun{budgets, std::move(leaves), std::move(prepared)};
}

RegressionRun RunRegression(const DataMatrix& x, const Vector& y,
                            const Box& domain, double label_bound,
                            const PipelineConfig& config, RandomSource& rng) {
  PreparedRun prep = PrepareRun(x, y, domain, label_bound, config, rng);
  RandomSource sum_rng = rng.Substream(kSumStream);
  PrivatizeOptions options;
  options.zero_noise = config.zero_noise;
  options.strict_l2 = config.strict_l2;
  PrivatizedSummaries priv = Privatize(prep.prepared, prep.budgets.sum_x,
                                       prep.budgets.sum_y, sum_rng, options);
  PrivateFit fit = FitPrivate(priv, FitOptions{config.alpha, config.scaling});
  Vector naive = FitNaive(priv);
  return RegressionRun{std::move(prep), std::move(priv), std::move(fit),
                       std::move(naive)};
}

SynthesisRun RunSynthesis(const DataMatrix& x, const Vector& y,
                          const Box& domain, double label_bound,
                          const PipelineConfig& config,
                          const SynthesisOptions& synth_options,
                          RandomSource& rng) {
  PreparedRun prep = PrepareRun(x, y, domain, label_bound, config, rng);
  // Same stream as the regression route: the two are alternative consumers
  // of the (mu_s, mu_t) budgets.
  RandomSource sum_rng = rng.Substream(kSumStream);
  SynthesisOptions options = synth_options;
  options.zero_noise = options.zero_noise || config.zero_noise;
  options.strict_l2 = options.strict_l2 || config.strict_l2;
  SyntheticDataset dataset = Generate(prep.prepared, prep.budgets.sum_x,
                                      prep.budgets.sum_y, sum_rng, options);
  return SynthesisRun{std::move(prep), std::move(dataset)};
}

}  // namespace binagg::harness
