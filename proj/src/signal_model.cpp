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

#include "absim/signal_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "absim/rng.hpp"

namespace absim {

namespace {

ChannelState derive(const ChannelState& partial) {
  ChannelState ch = partial;
  ch.h0 = ch.h_sr;
  ch.h1 = ch.h_sr + ch.eta * ch.h_tr * ch.h_st;
  return ch;
}

std::complex<double> draw_source_sample(const AmbientSource& src,
                                        std::mt19937_64& gen) {
  if (src.kind == SourceKind::complex_gaussian) {
    return rng::draw_cn(gen, src.Ps);
  }
  std::uniform_int_distribution<int> pick(0, src.modulation_order - 1);
  const double phase =
      2.0 * std::numbers::pi * pick(gen) / src.modulation_order;
  return std::polar(std::sqrt(src.Ps), phase);
}

}  // namespace

ChannelState fixed_channel(std::complex<double> h_st,
                           std::complex<double> h_sr,
                           std::complex<double> h_tr, double eta) {
  if (!(eta > 0.0) || !(eta <= 1.0)) {
    throw std::invalid_argument(
        "fixed_channel: eta must lie in (0, 1]");
  }
  return derive({h_st, h_sr, h_tr, eta, {}, {}});
}

ChannelState draw_channel(std::mt19937_64& gen) {
  ChannelState ch;
  ch.h_st = rng::draw_cn(gen, 1.0);
  ch.h_sr = rng::draw_cn(gen, 1.0);
  ch.h_tr = rng::draw_cn(gen, 10.0);
  ch.eta = 0.5;
  return derive(ch);
}

double rcd(std::complex<double> h0, std::complex<double> h1) {
  const double a = std::norm(h0);
  const double b = std::norm(h1);
  if (a == 0.0 && b == 0.0) {
    throw std::domain_error("rcd: undefined when both channels are zero");
  }
  return std::abs(b - a) / std::sqrt(a * a + b * b);
}

ChannelState synthesize_channel_with_rcd(double rcd_value, RcdBranch branch) {
  if (!(rcd_value >= 0.0) || !(rcd_value <= 1.0)) {
    // |b - a| / sqrt(a² + b²) = sqrt(1 - 2ab/(a²+b²)) <= 1 for nonnegative
    // powers, so no channel exists beyond 1.
    throw std::invalid_argument(
        "synthesize_channel_with_rcd: achievable ratio range is [0, 1]");
  }

  // With |h0|² = a = 1 and |h1|² = x: r² (1 + x²) = (x - 1)², giving
  //   x = (1 ± r·sqrt(2 - r²)) / (1 - r²),
  // two positive roots with product 1 (reciprocal pair); '+' is the
  // stronger-h1 root. At r = 1 the denominator vanishes: the h0_stronger
  // root degenerates to x = 0, and the h1_stronger branch has no finite x
  // with a = 1, so the roles swap to a = 0, x = 1.
  double a = 1.0;
  double x;
  if (rcd_value == 1.0) {
    if (branch == RcdBranch::h1_stronger) {
      a = 0.0;
      x = 1.0;
    } else {
      x = 0.0;
    }
  } else {
    const double r2 = rcd_value * rcd_value;
    const double root = rcd_value * std::sqrt(2.0 - r2);
    x = (branch == RcdBranch::h1_stronger) ? (1.0 + root) / (1.0 - r2)
                                           : (1.0 - root) / (1.0 - r2);
  }

  ChannelState ch;
  ch.h_sr = std::sqrt(a);
  ch.h_st = 1.0;
  ch.eta = 0.5;
  const std::complex<double> h1 = std::sqrt(x);
  ch.h_tr = (h1 - ch.h_sr) / ch.eta;
  return derive(ch);
}

std::vector<std::complex<double>> receive_chip(int chip,
                                               const ChannelState& ch,
                                               const AmbientSource& src,
                                               const NoiseModel& noise, int N,
                                               std::mt19937_64& gen) {
  if (chip != 0 && chip != 1) {
    throw std::invalid_argument("receive_chip: chip must be 0 or 1");
  }
  if (N < 1) {
    throw std::invalid_argument("receive_chip: N must be >= 1");
  }
  const std::complex<double> h = (chip == 0) ? ch.h0 : ch.h1;
  std::vector<std::complex<double>> y(static_cast<std::size_t>(N));
  for (auto& sample : y) {
    const std::complex<double> s = draw_source_sample(src, gen);
    sample = h * s;
    if (noise.Nw > 0.0) {
      sample += rng::draw_cn(gen, noise.Nw);
    }
  }
  return y;
}

double chip_energy(int chip, const ChannelState& ch, const AmbientSource& src,
                   const NoiseModel& noise, int N, std::mt19937_64& gen) {
  if (chip != 0 && chip != 1) {
    throw std::invalid_argument("chip_energy: chip must be 0 or 1");
  }
  if (N < 1) {
    throw std::invalid_argument("chip_energy: N must be >= 1");
  }
  const std::complex<double> h = (chip == 0) ? ch.h0 : ch.h1;
  double energy = 0.0;
  for (int n = 0; n < N; ++n) {
    std::complex<double> sample = h * draw_source_sample(src, gen);
    if (noise.Nw > 0.0) {
      sample += rng::draw_cn(gen, noise.Nw);
    }
    energy += std::norm(sample);
  }
  return energy;
}

double sigma_sq(std::complex<double> h, double Ps, double Nw) {
  if (!(Ps > 0.0)) {
    throw std::invalid_argument("sigma_sq: Ps must be positive");
  }
  if (!(Nw > 0.0)) {
    throw std::invalid_argument("sigma_sq: Nw must be positive");
  }
  return std::norm(h) * Ps + Nw;
}

}  // namespace absim
