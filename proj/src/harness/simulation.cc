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

#include "binagg/harness/simulation.h"

#include <cmath>

#include "binagg/error.h"

namespace binagg::harness {

Vector DrawCoefficients(std::size_t d, RandomSource& rng) {
  Require(d >= 1, "simulation needs d >= 1");
  Vector beta(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < beta.size(); ++i) beta(i) = rng.Uniform(1.0, 2.0);
  return beta;
}

SimulatedData SimulateDataset(std::size_t n, const Vector& beta, double sigma,
                              RandomSource& rng) {
  Require(n >= 1 && beta.size() >= 1, "simulation needs n >= 1 and d >= 1");
  Require(std::isfinite(sigma) && sigma >= 0, "sigma must be non-negative");
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = beta.size();
  SimulatedData out{DataMatrix(rows, cols), Vector(rows), beta};
  for (Eigen::Index j = 0; j < rows; ++j) {
    for (Eigen::Index i = 0; i < cols; ++i) out.x(j, i) = rng.Uniform();
  }
  for (Eigen::Index j = 0; j < rows; ++j) {
    const double noise = sigma == 0.0 ? 0.0 : sigma * rng.StandardNormal();
    out.y(j) = out.x.row(j).dot(out.beta) + noise;
  }
  return out;
}

SimulatedData SimulateDataset(std::size_t n, std::size_t d, double sigma,
                              RandomSource& rng) {
  Require(n >= 1 && d >= 1, "simulation needs n >= 1 and d >= 1");
  // Coefficients first so they do not depend on n.
  const Vector beta = DrawCoefficients(d, rng);
  return SimulateDataset(n, beta, sigma, rng);
}

double DefaultLabelUpper(std::size_t d) {
  switch (d) {
    case 1:
      return 2.0;
    case 5:
      return 7.0;
    case 10:
      return 15.0;
    default:
      return std::ceil(1.5 * static_cast<double>(d));
  }
}

}  // namespace binagg::harness
