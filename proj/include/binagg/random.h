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

#ifndef BINAGG_RANDOM_H_
#define BINAGG_RANDOM_H_

#include <cstdint>
#include <random>

namespace binagg {

// A seeded, addressable random stream. Two sources built from the same
// (seed, stream_id) produce bitwise-identical sequences; different stream ids
// are hashed into unrelated engine states.
//
// Every stochastic routine in the library takes a RandomSource& explicitly.
// There is no global engine.
class RandomSource {
 public:
  RandomSource(uint64_t seed, uint64_t stream_id);

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }

  // Derives an independent child stream. The child depends only on
  // (seed, stream_id, tag), never on how many draws this source has made.
  RandomSource Substream(uint64_t tag) const;

  // Uniform on the open interval (0, 1).
  double Uniform();
  double Uniform(double lo, double hi);
  double StandardNormal();
  double Normal(double mean, double stddev);
  // Zero-centred Laplace with density exp(-|x|/scale) / (2 scale).
  double Laplace(double scale);
  // Uniform integer in [0, n).
  uint64_t Index(uint64_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

// SplitMix64 finalizer; used to mix seeds and stream ids.
uint64_t MixBits(uint64_t x);

}  // namespace binagg

#endif  // BINAGG_RANDOM_H_
