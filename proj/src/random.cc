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

#include "binagg/random.h"

#include <cmath>

#include "binagg/error.h"

namespace binagg {

uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::mt19937_64 MakeEngine(uint64_t seed, uint64_t stream_id) {
  const uint64_t a = MixBits(seed);
  const uint64_t b = MixBits(stream_id ^ 0x5851f42d4c957f2dULL);
  const uint64_t c = MixBits(a ^ (b << 1) ^ (b >> 63));
  std::seed_seq seq{static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32),
                    static_cast<uint32_t>(b), static_cast<uint32_t>(b >> 32),
                    static_cast<uint32_t>(c), static_cast<uint32_t>(c >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomSource::RandomSource(uint64_t seed, uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(MakeEngine(seed, stream_id)) {}

RandomSource RandomSource::Substream(uint64_t tag) const {
  return RandomSource(seed_, MixBits(stream_id_ * 0x9e3779b97f4a7c15ULL ^
                                     MixBits(tag + 0x632be59bd9b4e019ULL)));
}

double RandomSource::Uniform() {
  // 53 random bits mapped to the centre of each of 2^53 cells, never 0 or 1.
  const uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomSource::Uniform(double lo, double hi) {
  return lo + (hi - lo) * Uniform();
}

double RandomSource::StandardNormal() { return normal_(engine_); }

double RandomSource::Normal(double mean, double stddev) {
  return mean + stddev * StandardNormal();
}

double RandomSource::Laplace(double scale) {
  Require(std::isfinite(scale) && scale > 0, "Laplace scale must be positive");
  const double u = Uniform() - 0.5;
  return -scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::fabs(u));
}

uint64_t RandomSource::Index(uint64_t n) {
  Require(n > 0, "Index range must be non-empty");
  std::uniform_int_distribution<uint64_t> dist(0, n - 1);
  return dist(engine_);
}

}  // namespace binagg
