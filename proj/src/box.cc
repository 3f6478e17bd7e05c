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

#include "binagg/box.h"

#include <cmath>

#include "binagg/error.h"

namespace binagg {

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  Require(!lower_.empty(), "box must have at least one dimension");
  Require(lower_.size() == upper_.size(), "box bound vectors differ in size");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    Require(std::isfinite(lower_[i]) && std::isfinite(upper_[i]),
            "box bounds must be finite");
    Require(lower_[i] < upper_[i], "box is degenerate in dimension " +
                                       std::to_string(i));
  }
}

Box Box::Unit(std::size_t dims) {
  return Box(std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0));
}

double Box::Volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dims(); ++i) v *= Width(i);
  return v;
}

std::size_t Box::WidestDimension() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < dims(); ++i) {
    if (Width(i) > Width(best)) best = i;
  }
  return best;
}

std::pair<Box, Box> Box::Split(std::size_t dim) const {
  Require(dim < dims(), "split dimension out of range");
  const double mid = lower_[dim] + 0.5 * Width(dim);
  Require(lower_[dim] < mid && mid < upper_[dim],
          "box too narrow to split further");
  std::vector<double> lo_upper = upper_;
  lo_upper[dim] = mid;
  std::vector<double> hi_lower = lower_;
  hi_lower[dim] = mid;
  return {Box(lower_, std::move(lo_upper)), Box(std::move(hi_lower), upper_)};
}

bool Box::Contains(std::span<const double> point, const Box& domain) const {
  if (point.size() != dims()) return false;
  for (std::size_t i = 0; i < dims(); ++i) {
    const double x = point[i];
    if (!(x >= lower_[i])) return false;
    if (x < upper_[i]) continue;
    if (x == upper_[i] && upper_[i] == domain.upper(i)) continue;
    return false;
  }
  return true;
}

bool Box::ContainsClosed(std::span<const double> point) const {
  if (point.size() != dims()) return false;
  for (std::size_t i = 0; i < dims(); ++i) {
    if (!(point[i] >= lower_[i] && point[i] <= upper_[i])) return false;
  }
  return true;
}

Box Box::Scaled(double factor) const {
  Require(std::isfinite(factor) && factor > 0, "scale factor must be > 0");
  std::vector<double> lo(lower_), hi(upper_);
  for (std::size_t i = 0; i < dims(); ++i) {
    lo[i] *= factor;
    hi[i] *= factor;
  }
  return Box(std::move(lo), std::move(hi));
}

}  // namespace binagg
