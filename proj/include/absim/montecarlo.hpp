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
// End-to-end link simulation. Per coherence block: one channel realization,
// K information bits, per-detector transmissions and decisions, error counts
// against the original bits (training symbols never enter the denominator).
//
// Determinism contract: every random draw comes from a substream derived
// from (seed, block, purpose), so estimates are bit-identical regardless of
// worker count and of which other detectors are enabled. Blocks run in
// parallel; the reduction is integer addition, so schedule order is
// irrelevant.

#ifndef ABSIM_MONTECARLO_HPP
#define ABSIM_MONTECARLO_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "absim/signal_model.hpp"

namespace absim::mc {

// Invalid experiment configuration; the message names the offending
// config-file key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ChannelMode { rayleigh_random, fixed_rcd, fixed_channels };

enum class Detector : int {
  secomc = 0,        // trained semi-coherent Manchester detector
  secomc_genie = 1,  // same decisions with the true variance relation
  nocomc = 2,        // non-coherent differential detector
  baseline = 3,      // trained-threshold detector, uncoded reference scheme
};
inline constexpr int kDetectorCount = 4;
inline constexpr std::array<Detector, kDetectorCount> kAllDetectors = {
    Detector::secomc, Detector::secomc_genie, Detector::nocomc,
    Detector::baseline};

const char* to_string(Detector d);
std::optional<Detector> parse_detector(const std::string& name);

// The sampling path reads source.Ps and noise.Nw; the analytic columns read
// link.gamma. Configs keep ps = gamma * nw (the config file's gamma_db key
// and the gamma_db sweep axis maintain this themselves; validate() rejects
// a drifted hand-built config). nw = 0 is the noiseless special case where
// gamma is meaningless and ignored.
struct ExperimentConfig {
  LinkParams link;
  AmbientSource source;
  NoiseModel noise;
  ChannelMode channel_mode = ChannelMode::fixed_rcd;
  double rcd_value = 0.5;
  RcdBranch rcd_branch = RcdBranch::h1_stronger;
  ChannelState fixed;  // used when channel_mode == fixed_channels
  std::vector<Detector> detectors = {Detector::secomc, Detector::secomc_genie,
                                     Detector::nocomc, Detector::baseline};
  std::int64_t blocks = 1000;
  std::uint64_t seed = 1;

  bool has(Detector d) const;
  // Throws ConfigError naming the bad key.
  void validate() const;
  // The channel realization block b sees (drawn for rayleigh_random,
  // synthesized or copied otherwise). Pure in (config, b).
  ChannelState channel_for_block(std::uint64_t b) const;
};

struct BerEstimate {
  std::int64_t errors = 0;
  std::int64_t trials = 0;
  double ber = 0.0;
  double half_width_95 = 0.0;  // 1.96 * sqrt(ber(1-ber)/trials)

  static BerEstimate from_counts(std::int64_t errors, std::int64_t trials);
};

// Raw per-detector tallies of one or more blocks, indexed by Detector.
struct Counts {
  std::array<std::int64_t, kDetectorCount> errors{};
  std::array<std::int64_t, kDetectorCount> trials{};
  void add(const Counts& other);
};

// Simulates one coherence block; only detectors enabled in cfg accrue
// trials. cfg must already be validated.
Counts run_block(const ExperimentConfig& cfg, std::uint64_t block_index);

using EstimateSet = std::array<std::optional<BerEstimate>, kDetectorCount>;

// Aggregates run_block over cfg.blocks blocks, block-parallel over at most
// `threads` workers (values < 1 mean one worker). Deterministic for fixed
// config + seed.
EstimateSet estimate_ber(const ExperimentConfig& cfg, int threads = 1);

enum class SweepAxis { N, T, gamma_db, rcd, prior };
const char* to_string(SweepAxis a);
std::optional<SweepAxis> parse_axis(const std::string& name);

// Returns base with one parameter replaced. The gamma_db axis converts to
// linear SNR here (sweep axes speak the command-line vocabulary; every
// library API below this point stays linear). Throws ConfigError for values
// invalid on their axis.
ExperimentConfig apply_axis(const ExperimentConfig& base, SweepAxis axis,
                            double value);

// Closed-form columns attached to sweep rows. For fixed channels these are
// single-point evaluations; for rayleigh_random they are averages over the
// exact per-block channel draws the simulation used (recomputed serially so
// the result never depends on the thread count).
struct AnalyticBer {
  std::optional<double> exact;
  std::optional<double> approx;
  std::optional<double> floor;  // error floor (Gaussian) / high-SNR (det.)
};

struct SweepRow {
  double axis_value = 0.0;
  Detector detector = Detector::secomc;
  BerEstimate sim;
  AnalyticBer analytic;
};

// One row per (value, enabled detector), in the given value order then the
// canonical detector order. Throws ConfigError on an empty value list.
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            const std::vector<double>& values,
                            int threads = 1);

// The analytic columns for one detector under one config (exposed for
// tests and the acceptance suite).
AnalyticBer analytic_for(const ExperimentConfig& cfg, Detector d);

}  // namespace absim::mc

#endif  // ABSIM_MONTECARLO_HPP
