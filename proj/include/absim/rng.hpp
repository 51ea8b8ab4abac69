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
//
// Deterministic substream derivation. A single 64-bit experiment seed fans
// out into one independent stream per (block, purpose), so results do not
// depend on worker count, schedule, or which detectors are enabled.

#ifndef ABSIM_RNG_HPP
#define ABSIM_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace absim::rng {

// Substream roles within one coherence block. Each enabled transmission owns
// a fixed purpose index; adding or removing a detector never shifts the draws
// seen by another detector.
enum class Purpose : std::uint64_t {
  channel = 0,
  data_bits = 1,
  manchester_link = 2,
  diff_manchester_link = 3,
  baseline_link = 4,
};

// splitmix64 finalizer; full-period bijective mixer on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

// Collision-resistant combination of (seed, block, purpose) into one word.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t block,
                          std::uint64_t purpose);

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t block,
                            Purpose purpose);

// One sample of CN(0, variance): independent real/imag parts, each
// N(0, variance/2). variance = 0 returns exactly 0.
std::complex<double> draw_cn(std::mt19937_64& gen, double variance);

}  // namespace absim::rng

#endif  // ABSIM_RNG_HPP
