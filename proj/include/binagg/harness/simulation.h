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

#ifndef BINAGG_HARNESS_SIMULATION_H_
#define BINAGG_HARNESS_SIMULATION_H_

#include <cstddef>

#include "binagg/random.h"
#include "binagg/types.h"

namespace binagg::harness {

struct SimulatedData {
  DataMatrix x;
  Vector y;
  Vector beta;
};

// x ~ U([0,1]^d), beta ~ U([1,2]^d), y = x beta + N(0, sigma^2).
SimulatedData SimulateDataset(std::size_t n, std::size_t d, double sigma,
                              RandomSource& rng);

// Same law with the coefficients held fixed.
SimulatedData SimulateDataset(std::size_t n, const Vector& beta, double sigma,
                              RandomSource& rng);

// beta ~ U([1,2]^d).
Vector DrawCoefficients(std::size_t d, RandomSource& rng);

// Default label clipping interval for the simulation protocol: (0, 2),
// (0, 7), (0, 15) for d = 1, 5, 10; (0, ceil(1.5 d)) otherwise.
double DefaultLabelUpper(std::size_t d);

}  // namespace binagg::harness

#endif  // BINAGG_HARNESS_SIMULATION_H_
