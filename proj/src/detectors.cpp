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

#include "absim/detectors.hpp"

namespace absim {

EnergyPair half_energies(std::span<const std::complex<double>> samples) {
  if (samples.size() % 2 != 0) {
    throw FramingError("half_energies: sample count must be even");
  }
  const std::size_t half = samples.size() / 2;
  EnergyPair e;
  for (std::size_t n = 0; n < half; ++n) {
    e.Za += std::norm(samples[n]);
  }
  for (std::size_t n = half; n < samples.size(); ++n) {
    e.Zb += std::norm(samples[n]);
  }
  return e;
}

SeCoMCState SeCoMCState::genie(SigmaRelation relation) {
  SeCoMCState s;
  s.relation = relation;
  // Placeholder averages consistent with "relation = sigma0_greater iff
  // At > Bt"; no training happened, so any consistent pair serves.
  if (relation == SigmaRelation::sigma0_greater) {
    s.At = 1.0;
    s.Bt = 0.0;
  } else {
    s.At = 0.0;
    s.Bt = 1.0;
  }
  return s;
}

SeCoMCState secomc_train(std::span<const EnergyPair> training_pairs, int N) {
  if (training_pairs.empty()) {
    throw TrainingError(
        "secomc_train: at least one training symbol required "
        "(use a genie state when no training is available)");
  }
  if (N < 1) {
    throw std::invalid_argument("secomc_train: N must be >= 1");
  }
  SeCoMCState s;
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (const EnergyPair& e : training_pairs) {
    sum_a += e.Za;
    sum_b += e.Zb;
  }
  const double scale = static_cast<double>(training_pairs.size()) * N;
  s.At = sum_a / scale;
  s.Bt = sum_b / scale;
  s.relation = (s.At > s.Bt) ? SigmaRelation::sigma0_greater
                             : SigmaRelation::sigma1_greater;
  s.degenerate = (s.At == s.Bt);
  return s;
}

int secomc_detect(const SeCoMCState& state, EnergyPair e) {
  if (state.relation == SigmaRelation::sigma0_greater) {
    return e.Za > e.Zb ? 1 : 0;
  }
  return e.Za <= e.Zb ? 1 : 0;
}

NoCoMCState NoCoMCState::from_preamble(EnergyPair e) {
  NoCoMCState s;
  s.prev_diff_sign =
      (e.Za - e.Zb > 0.0) ? DiffSign::positive : DiffSign::nonpositive;
  return s;
}

NoCoMCDecision nocomc_detect(NoCoMCState state, EnergyPair e) {
  const double cur = e.Za - e.Zb;
  NoCoMCDecision d;
  if (cur == 0.0) {
    // Zero product never satisfies the strict sign-change test.
    d.bit = 0;
    d.next.prev_diff_sign = DiffSign::nonpositive;
    return d;
  }
  if (cur > 0.0) {
    d.bit = (state.prev_diff_sign == DiffSign::nonpositive) ? 1 : 0;
    d.next.prev_diff_sign = DiffSign::positive;
  } else {
    d.bit = (state.prev_diff_sign == DiffSign::positive) ? 1 : 0;
    d.next.prev_diff_sign = DiffSign::nonpositive;
  }
  return d;
}

BaselineState baseline_train(std::span<const double> symbol_energies_h0,
                             std::span<const double> symbol_energies_h1) {
  if (symbol_energies_h0.empty() || symbol_energies_h1.empty()) {
    throw TrainingError(
        "baseline_train: both hypotheses need at least one pilot energy");
  }
  BaselineState s;
  for (double e : symbol_energies_h0) {
    s.mu0_hat += e;
  }
  for (double e : symbol_energies_h1) {
    s.mu1_hat += e;
  }
  s.mu0_hat /= static_cast<double>(symbol_energies_h0.size());
  s.mu1_hat /= static_cast<double>(symbol_energies_h1.size());
  s.threshold = 0.5 * (s.mu0_hat + s.mu1_hat);
  return s;
}

int baseline_detect(const BaselineState& state, double symbol_energy) {
  if (symbol_energy == state.threshold || state.mu1_hat == state.mu0_hat) {
    return 0;
  }
  const bool energy_above = symbol_energy > state.threshold;
  const bool mu1_above = state.mu1_hat > state.threshold;
  return (energy_above == mu1_above) ? 1 : 0;
}

}  // namespace absim
