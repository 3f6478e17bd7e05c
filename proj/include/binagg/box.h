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

#ifndef BINAGG_BOX_H_
#define BINAGG_BOX_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace binagg {

// Axis-aligned hyperrectangle with lower[i] < upper[i] in every dimension.
//
// Membership is half-open, [lower, upper), except on faces shared with an
// enclosing domain's upper face, which are closed. This makes the leaves of a
// partition cover every point of the domain exactly once.
class Box {
 public:
  Box(std::vector<double> lower, std::vector<double> upper);

  // Unit hypercube [0, 1]^d.
  static Box Unit(std::size_t dims);

  std::size_t dims() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  double Width(std::size_t i) const { return upper_[i] - lower_[i]; }
  double Volume() const;

  // Index of the widest side; ties go to the smallest index.
  std::size_t WidestDimension() const;

  // Halves along `dim` at the midpoint: {lower half, upper half}.
  std::pair<Box, Box> Split(std::size_t dim) const;

  // Half-open membership, with faces on `domain`'s upper boundary closed.
  bool Contains(std::span<const double> point, const Box& domain) const;

  // Closed membership [lower, upper].
  bool ContainsClosed(std::span<const double> point) const;

  // Multiplies every bound by `factor` (> 0); (0, 1) becomes (0, factor).
  Box Scaled(double factor) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace binagg

#endif  // BINAGG_BOX_H_
