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
// Energy detectors: the semi-coherent Manchester detector (short training
// phase establishes which hypothesis carries more power), the non-coherent
// differential detector (sign changes of half-energy differences), and a
// trained-threshold baseline modeling the prior semi-coherent scheme.
// All detectors consume half-interval energies, never raw samples, so unit
// tests can inject exact values. Tie cases (exact energy equality) follow
// the literal comparison operators documented per operation.

#ifndef ABSIM_DETECTORS_HPP
#define ABSIM_DETECTORS_HPP

#include <complex>
#include <span>
#include <stdexcept>

#include "absim/coding.hpp"

namespace absim {

struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Received energies of the two half-intervals of one symbol, each summed
// over N samples.
struct EnergyPair {
  double Za = 0.0;
  double Zb = 0.0;
};

// Za over the first half of a 2N-sample symbol, Zb over the second.
// Throws FramingError on odd length.
EnergyPair half_energies(std::span<const std::complex<double>> samples);

enum class SigmaRelation { sigma0_greater, sigma1_greater };

struct SeCoMCState {
  SigmaRelation relation = SigmaRelation::sigma1_greater;
  double At = 0.0;  // training estimate of the per-sample power under h0
  double Bt = 0.0;  // ... and under h1
  // At == Bt (or a genie told us the variances coincide): decisions are
  // still returned per the tie rules, but they carry no information.
  bool degenerate = false;

  // Training-free state with the relation supplied externally; used to
  // separate decision error from training error. At/Bt are placeholders
  // chosen to satisfy the relation/averages consistency invariant.
  static SeCoMCState genie(SigmaRelation relation);
};

// Averages the training energies (T symbols of original bit 1, whose
// Manchester pair (0,1) puts h0 in the first half): At = sum Za / (T N),
// Bt = sum Zb / (T N); relation = sigma0_greater iff At > Bt.
// Throws TrainingError when no pairs are supplied.
SeCoMCState secomc_train(std::span<const EnergyPair> training_pairs, int N);

// One symbol decision. relation = sigma0_greater: bit = 1 iff Za > Zb;
// relation = sigma1_greater: bit = 1 iff Za <= Zb. (Bit 1's pair (0,1)
// makes Za sample the h0 hypothesis, so the larger-variance side tells
// which half should win.)
int secomc_detect(const SeCoMCState& state, EnergyPair e);

// Sign memory for the differential detector: positive when the previous
// symbol's Za - Zb was > 0, nonpositive otherwise (zero collapses here).
enum class DiffSign { nonpositive, positive };

struct NoCoMCState {
  DiffSign prev_diff_sign = DiffSign::nonpositive;

  // Initial state from the transmitted preamble symbol's energies.
  static NoCoMCState from_preamble(EnergyPair e);
};

struct NoCoMCDecision {
  int bit = 0;
  NoCoMCState next;
};

// One symbol decision from the energy-difference sign product: bit = 1 iff
// the current difference Za - Zb and the remembered previous difference
// have strictly opposite signs; a zero difference yields bit 0 and a
// nonpositive memory.
NoCoMCDecision nocomc_detect(NoCoMCState state, EnergyPair e);

// Trained-threshold detector over full-symbol (2N-sample) energies.
struct BaselineState {
  double threshold = 0.0;
  double mu0_hat = 0.0;
  double mu1_hat = 0.0;
};

// Midpoint-of-means threshold from per-hypothesis pilot energies: the
// equal-prior, equal-variance intersection approximation. Deliberately kept
// as the plain midpoint rule; its breakdown under skewed priors is exactly
// the behavior the baseline exists to exhibit. Throws TrainingError when
// either sequence is empty.
BaselineState baseline_train(std::span<const double> symbol_energies_h0,
                             std::span<const double> symbol_energies_h1);

// Declares the hypothesis whose trained mean lies on the same side of the
// threshold as the observed energy; energy exactly on the threshold (or a
// fully degenerate mu0 = mu1 = threshold state) yields 0.
int baseline_detect(const BaselineState& state, double symbol_energy);

}  // namespace absim

#endif  // ABSIM_DETECTORS_HPP
