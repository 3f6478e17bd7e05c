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

// Flat key-value run configuration.
//
//   # comment
//   total_mu = 1
//   ratios = 1:3:3:3
//   bounds = 0:1,0:1,0:1
//   label_bounds = 0:7
//
// Recognised keys: total_mu, ratios, theta, max_depth, min_count, bounds,
// label_bounds, seed, reps, alpha, strict_l2_mode, algorithm2_literal_debias,
// intercept, n, d, sigma, workers.

#ifndef BINAGG_HARNESS_CONFIG_H_
#define BINAGG_HARNESS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binagg/gdp.h"
#include "binagg/harness/experiments.h"
#include "binagg/harness/pipeline.h"

namespace binagg::harness {

using KeyValues = std::map<std::string, std::string>;

struct RunSettings {
  PipelineConfig pipeline;
  std::vector<std::pair<double, double>> bounds;
  std::optional<std::pair<double, double>> label_bounds;
  uint64_t seed = kDefaultSeed;
  std::size_t reps = 2000;
  std::size_t n = 1000;
  std::size_t d = 5;
  double sigma = 1.0;
  std::size_t workers = 0;
};

KeyValues ParseKeyValues(std::istream& in);
KeyValues LoadKeyValues(const std::string& path);

// Applies one key. Throws kInvalidArgument for unknown keys or bad values.
void ApplySetting(const std::string& key, const std::string& value,
                  RunSettings& settings);
void ApplySettings(const KeyValues& values, RunSettings& settings);

BudgetRatios ParseRatios(const std::string& text);
std::pair<double, double> ParseInterval(const std::string& text);
std::vector<std::pair<double, double>> ParseIntervalList(const std::string& text);
bool ParseBool(const std::string& text);
double ParseDouble(const std::string& text);
uint64_t ParseUnsigned(const std::string& text);

// "key=v1,v2,..." for keys whose values contain no commas.
struct Sweep {
  std::string key;
  std::vector<std::string> values;
};
Sweep ParseSweep(const std::string& text);

}  // namespace binagg::harness

#endif  // BINAGG_HARNESS_CONFIG_H_
