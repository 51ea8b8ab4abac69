// Copyright 2026 the backscatter-sim authors
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

#include "absim/rng.hpp"

#include <cmath>

namespace absim::rng {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t block,
                          std::uint64_t purpose) {
  // Three mixing rounds, absorbing one word each; the golden-ratio constant
  // keeps (seed, 0, 0) away from the mixer's fixed point at 0.
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ block);
  h = mix64(h ^ purpose);
  return h;
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t block,
                            Purpose purpose) {
  return std::mt19937_64(
      derive_seed(seed, block, static_cast<std::uint64_t>(purpose)));
}

std::complex<double> draw_cn(std::mt19937_64& gen, double variance) {
  if (variance == 0.0) {
    return {0.0, 0.0};
  }
  // A fresh distribution object per call keeps the stream position a pure
  // function of the call sequence (no spare-normal cache carried across
  // call sites).
  std::normal_distribution<double> dist(0.0, std::sqrt(variance / 2.0));
  const double re = dist(gen);
  const double im = dist(gen);
  return {re, im};
}

}  // namespace absim::rng
