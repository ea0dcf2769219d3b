// Copyright 2026 The Skylink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SKYLINK_COMMON_RNG_H_
#define SKYLINK_COMMON_RNG_H_

#include <cstdint>
#include <random>

namespace skylink {

using Rng = std::mt19937_64;

// splitmix64 finaliser; used to derive independent stream seeds from a base
// seed and a stream index.
inline std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream) {
  return MixSeed(MixSeed(base) ^ (stream * 0xd1b54a32d192ed03ULL));
}

inline double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double StandardNormal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace skylink

#endif  // SKYLINK_COMMON_RNG_H_
