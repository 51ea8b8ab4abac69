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
// Physical-layer model of an ambient backscatter link: effective channels
// for the two tag states, ambient-source samples, receiver noise, and the
// received sample vector for one coded half-interval (chip).

#ifndef ABSIM_SIGNAL_MODEL_HPP
#define ABSIM_SIGNAL_MODEL_HPP

#include <complex>
#include <random>
#include <vector>

namespace absim {

// Channel gains of one coherence block. h0 is the effective channel when the
// tag does not backscatter, h1 when it does:
//   h0 = h_sr,  h1 = h_sr + eta * h_tr * h_st.
struct ChannelState {
  std::complex<double> h_st;
  std::complex<double> h_sr;
  std::complex<double> h_tr;
  double eta = 0.5;
  std::complex<double> h0;
  std::complex<double> h1;

  double h0_sq() const { return std::norm(h0); }
  double h1_sq() const { return std::norm(h1); }
};

// Fixed channel from explicit gains. Throws std::invalid_argument unless
// eta lies in (0, 1].
ChannelState fixed_channel(std::complex<double> h_st,
                           std::complex<double> h_sr,
                           std::complex<double> h_tr, double eta);

// Default fading draw: h_st, h_sr ~ CN(0,1), h_tr ~ CN(0,10), eta = 0.5.
ChannelState draw_channel(std::mt19937_64& gen);

// Relative channel difference | |h1|² - |h0|² | / sqrt(|h0|⁴ + |h1|⁴).
// Phase-insensitive. Throws std::domain_error when both gains are zero.
double rcd(std::complex<double> h0, std::complex<double> h1);

enum class RcdBranch { h1_stronger, h0_stronger };

// Channel with |h0|² = 1, zero phases, and |h1|² chosen so rcd(h0, h1)
// equals the request; branch picks which root of the defining quadratic
// (equivalently, which hypothesis carries more power). The remaining fields
// are back-filled consistently (h_st = 1, eta = 0.5, h_tr = (h1 - h0)/eta).
// The achievable range of the ratio over nonnegative powers is [0, 1]
// (the value 1 requires one effective channel to vanish; on h1_stronger the
// roles swap to |h0|² = 0, |h1|² = 1 there). Throws std::invalid_argument
// outside [0, 1].
ChannelState synthesize_channel_with_rcd(double rcd_value, RcdBranch branch);

enum class SourceKind { complex_gaussian, constant_modulus };

// Ambient RF source. ComplexGaussian: i.i.d. CN(0, Ps) samples.
// ConstantModulus: uniform draws from an M-point constant-envelope
// constellation scaled to power Ps (every sample has |s|² = Ps exactly;
// the detectors are energy-based, so any constant-modulus waveform with
// this power behaves identically).
struct AmbientSource {
  SourceKind kind = SourceKind::complex_gaussian;
  double Ps = 1.0;
  int modulation_order = 8;  // ConstantModulus only
};

// Receiver noise, i.i.d. CN(0, Nw) per sample. Nw = 0 is accepted and means
// an exactly noiseless link (the draw is skipped, not approximated).
struct NoiseModel {
  double Nw = 1.0;
};

// Per-link scalar parameters. gamma = Ps/Nw is linear here; decibels exist
// only at the command-line boundary.
struct LinkParams {
  int N = 20;                 // samples per coded half-interval
  double gamma = 0.0;         // SNR, linear
  double prior_of_one = 0.5;  // P(original bit = 1)
  int K = 30;                 // data symbols per coherence block
  int T = 2;                  // training symbols
};

// One received chip: N samples y[n] = h_chip · s[n] + w[n] with fresh,
// independent source and noise draws per sample; h_chip = h0 for chip 0,
// h1 for chip 1. Throws std::invalid_argument for chip outside {0,1} or
// N < 1.
std::vector<std::complex<double>> receive_chip(int chip,
                                               const ChannelState& ch,
                                               const AmbientSource& src,
                                               const NoiseModel& noise, int N,
                                               std::mt19937_64& gen);

// Energy of one received chip, sum |y[n]|² over N samples. Consumes the
// stream exactly like receive_chip but skips materializing the vector;
// this is the Monte Carlo hot path.
double chip_energy(int chip, const ChannelState& ch, const AmbientSource& src,
                   const NoiseModel& noise, int N, std::mt19937_64& gen);

// Per-sample received power |h|²·Ps + Nw under a given effective channel.
// Throws std::invalid_argument for nonpositive Ps or Nw.
double sigma_sq(std::complex<double> h, double Ps, double Nw);

}  // namespace absim

#endif  // ABSIM_SIGNAL_MODEL_HPP
