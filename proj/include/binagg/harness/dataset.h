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

// Loading comma-separated datasets and enforcing caller-supplied bounds.

#ifndef BINAGG_HARNESS_DATASET_H_
#define BINAGG_HARNESS_DATASET_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "binagg/box.h"
#include "binagg/types.h"

namespace binagg::harness {

enum class ClipPolicy { kClip, kReject };

struct DatasetSpec {
  std::string path;
  std::string label_column;
  // One (lo, hi) per feature column, in file order excluding the label.
  std::vector<std::pair<double, double>> feature_bounds;
  std::pair<double, double> label_bounds{0.0, 1.0};
  ClipPolicy policy = ClipPolicy::kClip;
};

struct LoadedDataset {
  std::vector<std::string> feature_names;
  DataMatrix x;
  Vector y;
  std::size_t clipped_rows = 0;   // rows with at least one clipped value
  std::size_t rejected_rows = 0;  // rows dropped under kReject
};

Box FeatureDomain(const DatasetSpec& spec);

// Parses CSV text (header row, ',' separator, '.' decimal). Errors carry
// ErrorCode::kLoadError with the offending line and column.
LoadedDataset ParseDataset(std::istream& in, const DatasetSpec& spec);

LoadedDataset LoadDataset(const DatasetSpec& spec);

// Clamp in place; return the number of rows changed.
std::size_t ClipToBox(DataMatrix& x, const Box& box);
std::size_t ClipLabels(Vector& y, double lo, double hi);

}  // namespace binagg::harness

#endif  // BINAGG_HARNESS_DATASET_H_
