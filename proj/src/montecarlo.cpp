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

#include "absim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "absim/analysis.hpp"
#include "absim/coding.hpp"
#include "absim/detectors.hpp"
#include "absim/rng.hpp"

namespace absim::mc {

namespace {

int idx(Detector d) { return static_cast<int>(d); }

SigmaRelation true_relation(const ChannelState& ch) {
  // sigma_i² = |h_i|² Ps + Nw with Ps > 0, so the ordering reduces to the
  // bare powers; an exact tie lands on sigma1_greater like a training tie.
  return (ch.h0_sq() > ch.h1_sq()) ? SigmaRelation::sigma0_greater
                                   : SigmaRelation::sigma1_greater;
}

std::vector<int> draw_bits(const ExperimentConfig& cfg, std::uint64_t b) {
  auto gen = rng::make_stream(cfg.seed, b, rng::Purpose::data_bits);
  std::bernoulli_distribution bern(cfg.link.prior_of_one);
  std::vector<int> bits(static_cast<std::size_t>(cfg.link.K));
  for (auto& bit : bits) {
    bit = bern(gen) ? 1 : 0;
  }
  return bits;
}

EnergyPair symbol_energies(ChipPair pair, const ExperimentConfig& cfg,
                           const ChannelState& ch, std::mt19937_64& gen) {
  EnergyPair e;
  e.Za = chip_energy(pair.first, ch, cfg.source, cfg.noise, cfg.link.N, gen);
  e.Zb = chip_energy(pair.second, ch, cfg.source, cfg.noise, cfg.link.N, gen);
  return e;
}

void run_manchester(const ExperimentConfig& cfg, std::uint64_t b,
                    const ChannelState& ch, const std::vector<int>& bits,
                    Counts& out) {
  const bool want_trained = cfg.has(Detector::secomc);
  const bool want_genie = cfg.has(Detector::secomc_genie);
  if (!want_trained && !want_genie) {
    return;
  }
  auto gen = rng::make_stream(cfg.seed, b, rng::Purpose::manchester_link);

  // The protocol always sends T training symbols of original bit 1 (pair
  // (0,1)) ahead of the data; the genie variant just ignores them.
  SeCoMCState trained;
  std::vector<EnergyPair> training(static_cast<std::size_t>(cfg.link.T));
  for (auto& e : training) {
    e = symbol_energies(kPair01, cfg, ch, gen);
  }
  if (want_trained) {
    trained = secomc_train(training, cfg.link.N);
  }
  const SeCoMCState genie = SeCoMCState::genie(true_relation(ch));

  for (int bit : bits) {
    const ChipPair pair = (bit == 0) ? kPair10 : kPair01;
    const EnergyPair e = symbol_energies(pair, cfg, ch, gen);
    if (want_trained) {
      out.errors[idx(Detector::secomc)] += (secomc_detect(trained, e) != bit);
      out.trials[idx(Detector::secomc)] += 1;
    }
    if (want_genie) {
      out.errors[idx(Detector::secomc_genie)] +=
          (secomc_detect(genie, e) != bit);
      out.trials[idx(Detector::secomc_genie)] += 1;
    }
  }
}

void run_diff_manchester(const ExperimentConfig& cfg, std::uint64_t b,
                         const ChannelState& ch, const std::vector<int>& bits,
                         Counts& out) {
  if (!cfg.has(Detector::nocomc)) {
    return;
  }
  auto gen = rng::make_stream(cfg.seed, b, rng::Purpose::diff_manchester_link);
  const ChipSequence seq = diff_manchester_encode(bits);
  // Symbol 0 is the transmitted preamble; its energies seed the sign memory.
  NoCoMCState state = NoCoMCState::from_preamble(
      symbol_energies({seq.chips[0], seq.chips[1]}, cfg, ch, gen));
  for (std::size_t k = 0; k < bits.size(); ++k) {
    const ChipPair pair{seq.chips[2 * (k + 1)], seq.chips[2 * (k + 1) + 1]};
    const EnergyPair e = symbol_energies(pair, cfg, ch, gen);
    const NoCoMCDecision dec = nocomc_detect(state, e);
    state = dec.next;
    out.errors[idx(Detector::nocomc)] += (dec.bit != bits[k]);
    out.trials[idx(Detector::nocomc)] += 1;
  }
}

void run_baseline(const ExperimentConfig& cfg, std::uint64_t b,
                  const ChannelState& ch, const std::vector<int>& bits,
                  Counts& out) {
  if (!cfg.has(Detector::baseline)) {
    return;
  }
  auto gen = rng::make_stream(cfg.seed, b, rng::Purpose::baseline_link);
  // The baseline models the uncoded reference scheme: one bit occupies one
  // full 2N-sample interval through h_bit (no mid-symbol transition), so a
  // symbol energy is informative on its own. Pilots cover both hypotheses
  // because a midpoint threshold needs both means; that asymmetry favors
  // the baseline relative to the single-hypothesis training of the
  // Manchester detectors.
  const int two_n = 2 * cfg.link.N;
  std::vector<double> e0(static_cast<std::size_t>(cfg.link.T));
  std::vector<double> e1(static_cast<std::size_t>(cfg.link.T));
  for (auto& e : e0) {
    e = chip_energy(0, ch, cfg.source, cfg.noise, two_n, gen);
  }
  for (auto& e : e1) {
    e = chip_energy(1, ch, cfg.source, cfg.noise, two_n, gen);
  }
  const BaselineState state = baseline_train(e0, e1);
  for (int bit : bits) {
    const double energy =
        chip_energy(bit, ch, cfg.source, cfg.noise, two_n, gen);
    out.errors[idx(Detector::baseline)] += (baseline_detect(state, energy) != bit);
    out.trials[idx(Detector::baseline)] += 1;
  }
}

}  // namespace

const char* to_string(Detector d) {
  switch (d) {
    case Detector::secomc:
      return "secomc";
    case Detector::secomc_genie:
      return "secomc_genie";
    case Detector::nocomc:
      return "nocomc";
    case Detector::baseline:
      return "baseline";
  }
  return "?";
}

std::optional<Detector> parse_detector(const std::string& name) {
  for (Detector d : kAllDetectors) {
    if (name == to_string(d)) {
      return d;
    }
  }
  return std::nullopt;
}

bool ExperimentConfig::has(Detector d) const {
  return std::find(detectors.begin(), detectors.end(), d) != detectors.end();
}

void ExperimentConfig::validate() const {
  if (link.N < 1) {
    throw ConfigError("n: must be an integer >= 1");
  }
  if (link.K < 1) {
    throw ConfigError("k: must be an integer >= 1");
  }
  if (link.T < 0) {
    throw ConfigError("t: must be an integer >= 0");
  }
  if (!(link.prior_of_one >= 0.0) || !(link.prior_of_one <= 1.0)) {
    throw ConfigError("prior_of_one: must lie in [0, 1]");
  }
  if (!(source.Ps > 0.0)) {
    throw ConfigError("ps: must be positive");
  }
  if (noise.Nw > 0.0) {
    if (!(link.gamma > 0.0)) {
      throw ConfigError("gamma_db: resulting linear SNR must be positive");
    }
    // The sampler reads ps and nw; the analytic columns read gamma. The
    // config layer keeps ps = gamma * nw, so a drift between them means a
    // hand-built config skipped that step.
    const double implied = source.Ps / noise.Nw;
    if (std::abs(link.gamma - implied) >
        1e-9 * std::max(link.gamma, implied)) {
      throw ConfigError("gamma_db: inconsistent with ps and nw (ps must "
                        "equal gamma_linear * nw)");
    }
  }
  if (source.kind == SourceKind::constant_modulus &&
      source.modulation_order < 2) {
    throw ConfigError("modulation_order: must be >= 2");
  }
  if (!(noise.Nw >= 0.0)) {
    throw ConfigError("nw: must be >= 0 (0 means an exactly noiseless link)");
  }
  if (blocks < 1) {
    throw ConfigError("blocks: must be >= 1");
  }
  if (detectors.empty()) {
    throw ConfigError("detectors: at least one detector required");
  }
  for (std::size_t i = 0; i < detectors.size(); ++i) {
    for (std::size_t j = i + 1; j < detectors.size(); ++j) {
      if (detectors[i] == detectors[j]) {
        throw ConfigError("detectors: duplicate entry");
      }
    }
  }
  if (has(Detector::secomc) && link.T < 1) {
    throw ConfigError("t: secomc training needs t >= 1 (or use secomc_genie)");
  }
  if (has(Detector::baseline) && link.T < 1) {
    throw ConfigError("t: baseline pilots need t >= 1");
  }
  if (channel_mode == ChannelMode::fixed_rcd &&
      (!(rcd_value >= 0.0) || !(rcd_value <= 1.0))) {
    throw ConfigError("rcd: achievable range is [0, 1]");
  }
}

ChannelState ExperimentConfig::channel_for_block(std::uint64_t b) const {
  switch (channel_mode) {
    case ChannelMode::rayleigh_random: {
      auto gen = rng::make_stream(seed, b, rng::Purpose::channel);
      return draw_channel(gen);
    }
    case ChannelMode::fixed_rcd:
      return synthesize_channel_with_rcd(rcd_value, rcd_branch);
    case ChannelMode::fixed_channels:
      return fixed;
  }
  throw std::logic_error("channel_for_block: bad channel mode");
}

BerEstimate BerEstimate::from_counts(std::int64_t errors,
                                     std::int64_t trials) {
  if (trials <= 0) {
    throw ConfigError("blocks: produced zero trials");
  }
  BerEstimate e;
  e.errors = errors;
  e.trials = trials;
  e.ber = static_cast<double>(errors) / static_cast<double>(trials);
  e.half_width_95 =
      1.96 * std::sqrt(e.ber * (1.0 - e.ber) / static_cast<double>(trials));
  return e;
}

void Counts::add(const Counts& other) {
  for (int i = 0; i < kDetectorCount; ++i) {
    errors[i] += other.errors[i];
    trials[i] += other.trials[i];
  }
}

Counts run_block(const ExperimentConfig& cfg, std::uint64_t block_index) {
  const ChannelState ch = cfg.channel_for_block(block_index);
  const std::vector<int> bits = draw_bits(cfg, block_index);
  Counts out;
  run_manchester(cfg, block_index, ch, bits, out);
  run_diff_manchester(cfg, block_index, ch, bits, out);
  run_baseline(cfg, block_index, ch, bits, out);
  return out;
}

EstimateSet estimate_ber(const ExperimentConfig& cfg, int threads) {
  cfg.validate();
  const std::int64_t blocks = cfg.blocks;
  const int workers = static_cast<int>(
      std::clamp<std::int64_t>(threads < 1 ? 1 : threads, 1, blocks));

  Counts total;
  if (workers == 1) {
    for (std::int64_t b = 0; b < blocks; ++b) {
      total.add(run_block(cfg, static_cast<std::uint64_t>(b)));
    }
  } else {
    std::vector<Counts> partial(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::int64_t lo = blocks * w / workers;
          const std::int64_t hi = blocks * (w + 1) / workers;
          Counts local;
          for (std::int64_t b = lo; b < hi; ++b) {
            local.add(run_block(cfg, static_cast<std::uint64_t>(b)));
          }
          partial[static_cast<std::size_t>(w)] = local;
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    if (first_error) {
      std::rethrow_exception(first_error);
    }
    for (const Counts& c : partial) {
      total.add(c);
    }
  }

  EstimateSet result;
  for (Detector d : cfg.detectors) {
    result[static_cast<std::size_t>(idx(d))] =
        BerEstimate::from_counts(total.errors[idx(d)], total.trials[idx(d)]);
  }
  return result;
}

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::N:
      return "N";
    case SweepAxis::T:
      return "T";
    case SweepAxis::gamma_db:
      return "gamma_db";
    case SweepAxis::rcd:
      return "rcd";
    case SweepAxis::prior:
      return "prior";
  }
  return "?";
}

std::optional<SweepAxis> parse_axis(const std::string& name) {
  for (SweepAxis a : {SweepAxis::N, SweepAxis::T, SweepAxis::gamma_db,
                      SweepAxis::rcd, SweepAxis::prior}) {
    if (name == to_string(a)) {
      return a;
    }
  }
  return std::nullopt;
}

ExperimentConfig apply_axis(const ExperimentConfig& base, SweepAxis axis,
                            double value) {
  ExperimentConfig cfg = base;
  switch (axis) {
    case SweepAxis::N: {
      const double rounded = std::nearbyint(value);
      if (rounded != value || rounded < 1.0) {
        throw ConfigError("values: N axis needs integers >= 1");
      }
      cfg.link.N = static_cast<int>(rounded);
      break;
    }
    case SweepAxis::T: {
      const double rounded = std::nearbyint(value);
      if (rounded != value || rounded < 0.0) {
        throw ConfigError("values: T axis needs integers >= 0");
      }
      cfg.link.T = static_cast<int>(rounded);
      break;
    }
    case SweepAxis::gamma_db:
      // The only place decibels become linear SNR. The sampled source power
      // tracks the new SNR at fixed noise level.
      if (!(cfg.noise.Nw > 0.0)) {
        throw ConfigError("values: gamma_db axis needs nw > 0");
      }
      cfg.link.gamma = std::pow(10.0, value / 10.0);
      cfg.source.Ps = cfg.link.gamma * cfg.noise.Nw;
      break;
    case SweepAxis::rcd:
      if (!(value >= 0.0) || !(value <= 1.0)) {
        throw ConfigError("values: rcd axis values must lie in [0, 1]");
      }
      cfg.channel_mode = ChannelMode::fixed_rcd;
      cfg.rcd_value = value;
      break;
    case SweepAxis::prior:
      if (!(value >= 0.0) || !(value <= 1.0)) {
        throw ConfigError("values: prior axis values must lie in [0, 1]");
      }
      cfg.link.prior_of_one = value;
      break;
  }
  return cfg;
}

namespace {

// Per-channel analytic columns. Nw = 0 configs have no finite-SNR formulas;
// callers get empty columns there (the exact floor would still be defined,
// but a noiseless run is a degenerate check, not a curve).
AnalyticBer analytic_point(const ExperimentConfig& cfg, Detector d,
                           const ChannelState& ch) {
  AnalyticBer out;
  if (!(cfg.noise.Nw > 0.0)) {
    return out;
  }
  const double h0_sq = ch.h0_sq();
  const double h1_sq = ch.h1_sq();
  const double gamma = cfg.link.gamma;
  const int N = cfg.link.N;
  const bool gaussian = cfg.source.kind == SourceKind::complex_gaussian;

  using namespace absim::analysis;
  switch (d) {
    case Detector::secomc:
    case Detector::secomc_genie:
      if (gaussian) {
        out.exact =
            ber_secomc_gaussian_exact(VarPair::from_gamma(h0_sq, h1_sq, gamma), N);
        out.approx = ber_secomc_gaussian_approx(h0_sq, h1_sq, gamma, N);
        if (h0_sq > 0.0 || h1_sq > 0.0) {
          out.floor = ber_secomc_gaussian_exact_floor(h0_sq, h1_sq, N);
        }
      } else {
        out.approx = ber_secomc_deterministic_approx(h0_sq, h1_sq, gamma, N);
        if (h0_sq > 0.0 || h1_sq > 0.0) {
          out.floor = ber_secomc_deterministic_highsnr(h0_sq, h1_sq, gamma, N);
        }
      }
      break;
    case Detector::nocomc:
      if (gaussian) {
        out.exact =
            ber_nocomc_gaussian_exact(VarPair::from_gamma(h0_sq, h1_sq, gamma), N);
        out.approx = ber_nocomc_gaussian_approx(h0_sq, h1_sq, gamma, N);
        if (h0_sq > 0.0 || h1_sq > 0.0) {
          out.floor = ber_nocomc_gaussian_exact_floor(h0_sq, h1_sq, N);
        }
      } else {
        out.approx = ber_nocomc_deterministic_approx(h0_sq, h1_sq, gamma, N);
        if (h0_sq > 0.0 || h1_sq > 0.0) {
          out.floor = ber_nocomc_deterministic_highsnr(h0_sq, h1_sq, gamma, N);
        }
      }
      break;
    case Detector::baseline:
      // Only the Gaussian-source asymptote exists for the reference scheme.
      if (gaussian) {
        out.approx = ber_baseline_gaussian_approx(h0_sq, h1_sq, gamma, N);
      }
      break;
  }
  return out;
}

}  // namespace

AnalyticBer analytic_for(const ExperimentConfig& cfg, Detector d) {
  if (cfg.channel_mode != ChannelMode::rayleigh_random) {
    return analytic_point(cfg, d, cfg.channel_for_block(0));
  }
  // Average over the per-block draws the simulation used, serially: the
  // same substreams reproduce the same channels independent of threading.
  AnalyticBer sum;
  std::int64_t defined = 0;
  for (std::int64_t b = 0; b < cfg.blocks; ++b) {
    const AnalyticBer p =
        analytic_point(cfg, d, cfg.channel_for_block(static_cast<std::uint64_t>(b)));
    if (p.exact) {
      sum.exact = sum.exact.value_or(0.0) + *p.exact;
    }
    if (p.approx) {
      sum.approx = sum.approx.value_or(0.0) + *p.approx;
    }
    if (p.floor) {
      sum.floor = sum.floor.value_or(0.0) + *p.floor;
    }
    ++defined;
  }
  if (defined > 0) {
    const double scale = 1.0 / static_cast<double>(defined);
    if (sum.exact) {
      sum.exact = *sum.exact * scale;
    }
    if (sum.approx) {
      sum.approx = *sum.approx * scale;
    }
    if (sum.floor) {
      sum.floor = *sum.floor * scale;
    }
  }
  return sum;
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            const std::vector<double>& values, int threads) {
  if (values.empty()) {
    throw ConfigError("values: at least one axis value required");
  }
  std::vector<SweepRow> rows;
  rows.reserve(values.size() * base.detectors.size());
  for (double v : values) {
    const ExperimentConfig cfg = apply_axis(base, axis, v);
    cfg.validate();
    const EstimateSet est = estimate_ber(cfg, threads);
    for (Detector d : kAllDetectors) {
      const auto& e = est[static_cast<std::size_t>(idx(d))];
      if (!e.has_value()) {
        continue;
      }
      SweepRow row;
      row.axis_value = v;
      row.detector = d;
      row.sim = *e;
      row.analytic = analytic_for(cfg, d);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace absim::mc
