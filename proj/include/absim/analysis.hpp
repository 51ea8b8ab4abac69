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
// Closed-form and asymptotic BER of the energy detectors. Every formula
// takes real squared channel magnitudes; the theory depends on channels
// only through |h0|², |h1|² (an adapter accepts ChannelState). gamma is
// linear throughout; decibels exist only at the command-line boundary.
//
// The exact Manchester-detector BER is computed as a regularized incomplete
// beta, never through the gamma-ratio/hypergeometric expression: the two
// are equal, but naive evaluation of the latter overflows near N ~ 85.
// The hypergeometric route survives only as a test oracle (see reference).
//
// Asymptotic (CLT) forms return linear probabilities that clamp to 0 with
// a diagnostic flag once the true value underflows double precision; the
// erfc *arguments* are exposed separately so deep-tail curves can be
// compared and plotted in log space.

#ifndef ABSIM_ANALYSIS_HPP
#define ABSIM_ANALYSIS_HPP

#include "absim/signal_model.hpp"

namespace absim::analysis {

// Diagnostics for the linear-space asymptotic forms.
struct BerDiag {
  bool underflowed = false;
};

// The two per-sample received powers of Eq-style σi² = |hi|² Ps + Nw form,
// ordered accessors for the exact formula. Throws std::invalid_argument
// unless both are positive.
struct VarPair {
  VarPair(double sigma0_sq_in, double sigma1_sq_in);
  static VarPair from_channel(const ChannelState& ch, double Ps, double Nw);
  // gamma-parameterized form: sets Ps = gamma, Nw = 1; the exact BER
  // depends only on the variance ratio, so this loses nothing.
  static VarPair from_gamma(double h0_sq, double h1_sq, double gamma);

  double sigma0_sq;
  double sigma1_sq;
  double sigma_n_sq() const;  // min
  double sigma_m_sq() const;  // max
};

// Half-symbol energy moments under a Gaussian ambient source:
// mean N·σi², variance N·σi⁴.
struct GaussianMoments {
  double mu_g0, mu_g1;
  double var_g0, var_g1;
  static GaussianMoments make(const VarPair& v, int N);
};

// ... and under an unknown-deterministic (constant-power) source:
// mean N(|hi|² Ps + Nw), variance N(2 |hi|² Ps Nw + Nw²). Always at most
// the Gaussian variance at equal parameters (the (|hi|² Ps)² self-noise
// term is absent).
struct DeterministicMoments {
  double mu_p0, mu_p1;
  double var_p0, var_p1;
  static DeterministicMoments make(double h0_sq, double h1_sq, double Ps,
                                   double Nw, int N);
};

// Exact genie-relation Manchester-detector BER with Gaussian source:
//   P = I_x(N, N),  x = sigma_n² / (sigma_n² + sigma_m²).
// Symmetric in the pair; result in (0, 0.5]. Training error is not part of
// this quantity (it is the fixed-relation decision error).
double ber_secomc_gaussian_exact(const VarPair& v, int N);

// erfc arguments of the CLT forms; the corresponding BER is erfc(arg)/2.
double erfc_arg_secomc_gaussian_approx(double h0_sq, double h1_sq,
                                       double gamma, int N);
double erfc_arg_secomc_gaussian_floor(double h0_sq, double h1_sq, int N);
double erfc_arg_baseline_gaussian_approx(double h0_sq, double h1_sq,
                                         double gamma, int N);
double erfc_arg_secomc_deterministic_approx(double h0_sq, double h1_sq,
                                            double gamma, int N);
double erfc_arg_secomc_deterministic_highsnr(double h0_sq, double h1_sq,
                                             double gamma, int N);

// Large-N CLT approximation, Gaussian source:
// erfc( sqrt(N)·||h1|²-|h0|²| / (sqrt(2)·sqrt((|h0|²+1/γ)²+(|h1|²+1/γ)²)) )/2.
double ber_secomc_gaussian_approx(double h0_sq, double h1_sq, double gamma,
                                  int N, BerDiag* diag = nullptr);

// γ → ∞ limit of the above: erfc(sqrt(N/2)·rcd)/2. This is the CLT
// approximation of the error floor; the floor of the exact BER is the
// γ → ∞ limit of ber_secomc_gaussian_exact (see ber_secomc_gaussian_exact_floor).
double ber_secomc_gaussian_floor(double h0_sq, double h1_sq, int N,
                                 BerDiag* diag = nullptr);

// γ → ∞ limit of the exact formula: I_x(N,N) at x = min/(min+max) of the
// noise-free powers |h0|², |h1|². The simulated high-SNR plateau converges
// here, not to the CLT floor.
double ber_secomc_gaussian_exact_floor(double h0_sq, double h1_sq, int N);

// Trained-threshold baseline, asymptotic:
// erfc( sqrt(N)·||h1|²-|h0|²| / (|h0|²+|h1|²+2/γ) )/2.
double ber_baseline_gaussian_approx(double h0_sq, double h1_sq, double gamma,
                                    int N, BerDiag* diag = nullptr);

// Unknown-deterministic source, CLT:
// erfc( sqrt(N)·||h1|²-|h0|²| / (2·sqrt((|h0|²+|h1|²)/γ + 1/γ²)) )/2.
double ber_secomc_deterministic_approx(double h0_sq, double h1_sq,
                                       double gamma, int N,
                                       BerDiag* diag = nullptr);

// High-SNR form: erfc( sqrt(Nγ)·||h1|²-|h0|²| / (2·sqrt(|h0|²+|h1|²)) )/2.
// No floor: decreases without bound in γ.
double ber_secomc_deterministic_highsnr(double h0_sq, double h1_sq,
                                        double gamma, int N,
                                        BerDiag* diag = nullptr);

// Differential-detector composition: an error needs exactly one of two
// adjacent Manchester decisions wrong, so P = 2p(1-p). Applies to exact and
// approximate p alike. Throws std::domain_error outside p in [0, 0.5].
double ber_nocomc_from_secomc(double p);

// The composition applied to each Manchester-detector form.
double ber_nocomc_gaussian_exact(const VarPair& v, int N);
double ber_nocomc_gaussian_approx(double h0_sq, double h1_sq, double gamma,
                                  int N, BerDiag* diag = nullptr);
double ber_nocomc_gaussian_floor(double h0_sq, double h1_sq, int N,
                                 BerDiag* diag = nullptr);
double ber_nocomc_gaussian_exact_floor(double h0_sq, double h1_sq, int N);
double ber_nocomc_deterministic_approx(double h0_sq, double h1_sq,
                                       double gamma, int N,
                                       BerDiag* diag = nullptr);
double ber_nocomc_deterministic_highsnr(double h0_sq, double h1_sq,
                                        double gamma, int N,
                                        BerDiag* diag = nullptr);

// The published erf² form of the composed BER, 1/2 - erf(x)²/2 at erfc
// argument x. Algebraically identical to 2p(1-p) with p = erfc(x)/2; kept
// as a separate implementation (built on erf, not erfc) so the identity is
// a genuine cross-check.
double ber_nocomc_erf_form(double erfc_argument);

// log(BER) of a CLT form given its erfc argument; finite far below the
// linear-space underflow point. For plotting and argument-domain work.
double log_ber_from_erfc_arg(double erfc_argument);

}  // namespace absim::analysis

#endif  // ABSIM_ANALYSIS_HPP
