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

#include "absim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "absim/special.hpp"

namespace absim::analysis {

namespace {

void check_inputs(double h0_sq, double h1_sq, double gamma, int N) {
  if (!(h0_sq >= 0.0) || !(h1_sq >= 0.0)) {
    throw std::invalid_argument("analysis: squared magnitudes must be >= 0");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("analysis: gamma must be positive");
  }
  if (N < 1) {
    throw std::invalid_argument("analysis: N must be >= 1");
  }
}

double clamped(double arg, BerDiag* diag) {
  bool under = false;
  const double v = special::half_erfc_clamped(arg, &under);
  if (diag != nullptr) {
    diag->underflowed = under;
  }
  return v;
}

}  // namespace

VarPair::VarPair(double sigma0_sq_in, double sigma1_sq_in)
    : sigma0_sq(sigma0_sq_in), sigma1_sq(sigma1_sq_in) {
  if (!(sigma0_sq > 0.0) || !(sigma1_sq > 0.0)) {
    throw std::invalid_argument("VarPair: variances must be positive");
  }
}

VarPair VarPair::from_channel(const ChannelState& ch, double Ps, double Nw) {
  return VarPair(sigma_sq(ch.h0, Ps, Nw), sigma_sq(ch.h1, Ps, Nw));
}

VarPair VarPair::from_gamma(double h0_sq, double h1_sq, double gamma) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("VarPair: gamma must be positive");
  }
  return VarPair(h0_sq * gamma + 1.0, h1_sq * gamma + 1.0);
}

double VarPair::sigma_n_sq() const { return std::min(sigma0_sq, sigma1_sq); }
double VarPair::sigma_m_sq() const { return std::max(sigma0_sq, sigma1_sq); }

GaussianMoments GaussianMoments::make(const VarPair& v, int N) {
  if (N < 1) {
    throw std::invalid_argument("GaussianMoments: N must be >= 1");
  }
  GaussianMoments m;
  m.mu_g0 = N * v.sigma0_sq;
  m.mu_g1 = N * v.sigma1_sq;
  m.var_g0 = N * v.sigma0_sq * v.sigma0_sq;
  m.var_g1 = N * v.sigma1_sq * v.sigma1_sq;
  return m;
}

DeterministicMoments DeterministicMoments::make(double h0_sq, double h1_sq,
                                                double Ps, double Nw, int N) {
  if (!(Ps > 0.0) || !(Nw > 0.0)) {
    throw std::invalid_argument(
        "DeterministicMoments: Ps and Nw must be positive");
  }
  if (N < 1) {
    throw std::invalid_argument("DeterministicMoments: N must be >= 1");
  }
  DeterministicMoments m;
  m.mu_p0 = N * (h0_sq * Ps + Nw);
  m.mu_p1 = N * (h1_sq * Ps + Nw);
  m.var_p0 = N * (2.0 * h0_sq * Ps * Nw + Nw * Nw);
  m.var_p1 = N * (2.0 * h1_sq * Ps * Nw + Nw * Nw);
  return m;
}

double ber_secomc_gaussian_exact(const VarPair& v, int N) {
  if (N < 1) {
    throw std::invalid_argument("ber_secomc_gaussian_exact: N must be >= 1");
  }
  const double x = v.sigma_n_sq() / (v.sigma_n_sq() + v.sigma_m_sq());
  return special::reg_inc_beta(x, N, N);
}

double erfc_arg_secomc_gaussian_approx(double h0_sq, double h1_sq,
                                       double gamma, int N) {
  check_inputs(h0_sq, h1_sq, gamma, N);
  const double a = h0_sq + 1.0 / gamma;
  const double b = h1_sq + 1.0 / gamma;
  return std::sqrt(static_cast<double>(N)) * std::abs(h1_sq - h0_sq) /
         (std::sqrt(2.0) * std::sqrt(a * a + b * b));
}

double erfc_arg_secomc_gaussian_floor(double h0_sq, double h1_sq, int N) {
  check_inputs(h0_sq, h1_sq, 1.0, N);
  if (h0_sq == 0.0 && h1_sq == 0.0) {
    throw std::invalid_argument("floor: channels cannot both vanish");
  }
  return std::sqrt(static_cast<double>(N)) * std::abs(h1_sq - h0_sq) /
         (std::sqrt(2.0) * std::sqrt(h0_sq * h0_sq + h1_sq * h1_sq));
}

double erfc_arg_baseline_gaussian_approx(double h0_sq, double h1_sq,
                                         double gamma, int N) {
  check_inputs(h0_sq, h1_sq, gamma, N);
  return std::sqrt(static_cast<double>(N)) * std::abs(h1_sq - h0_sq) /
         (h0_sq + h1_sq + 2.0 / gamma);
}

double erfc_arg_secomc_deterministic_approx(double h0_sq, double h1_sq,
                                            double gamma, int N) {
  check_inputs(h0_sq, h1_sq, gamma, N);
  return std::sqrt(static_cast<double>(N)) * std::abs(h1_sq - h0_sq) /
         (2.0 * std::sqrt((h0_sq + h1_sq) / gamma + 1.0 / (gamma * gamma)));
}

double erfc_arg_secomc_deterministic_highsnr(double h0_sq, double h1_sq,
                                             double gamma, int N) {
  check_inputs(h0_sq, h1_sq, gamma, N);
  if (h0_sq == 0.0 && h1_sq == 0.0) {
    throw std::invalid_argument("highsnr: channels cannot both vanish");
  }
  return std::sqrt(static_cast<double>(N) * gamma) * std::abs(h1_sq - h0_sq) /
         (2.0 * std::sqrt(h0_sq + h1_sq));
}

double ber_secomc_gaussian_approx(double h0_sq, double h1_sq, double gamma,
                                  int N, BerDiag* diag) {
  return clamped(erfc_arg_secomc_gaussian_approx(h0_sq, h1_sq, gamma, N),
                 diag);
}

double ber_secomc_gaussian_floor(double h0_sq, double h1_sq, int N,
                                 BerDiag* diag) {
  return clamped(erfc_arg_secomc_gaussian_floor(h0_sq, h1_sq, N), diag);
}

double ber_secomc_gaussian_exact_floor(double h0_sq, double h1_sq, int N) {
  if (N < 1) {
    throw std::invalid_argument(
        "ber_secomc_gaussian_exact_floor: N must be >= 1");
  }
  if (!(h0_sq >= 0.0) || !(h1_sq >= 0.0) || (h0_sq == 0.0 && h1_sq == 0.0)) {
    throw std::invalid_argument(
        "ber_secomc_gaussian_exact_floor: need nonnegative, not both-zero "
        "powers");
  }
  // γ → ∞: σi² → |hi|²·Ps, so x → min/(min+max) of the bare powers.
  const double lo = std::min(h0_sq, h1_sq);
  const double hi = std::max(h0_sq, h1_sq);
  return special::reg_inc_beta(lo / (lo + hi), N, N);
}

double ber_baseline_gaussian_approx(double h0_sq, double h1_sq, double gamma,
                                    int N, BerDiag* diag) {
  return clamped(erfc_arg_baseline_gaussian_approx(h0_sq, h1_sq, gamma, N),
                 diag);
}

double ber_secomc_deterministic_approx(double h0_sq, double h1_sq,
                                       double gamma, int N, BerDiag* diag) {
  return clamped(erfc_arg_secomc_deterministic_approx(h0_sq, h1_sq, gamma, N),
                 diag);
}

double ber_secomc_deterministic_highsnr(double h0_sq, double h1_sq,
                                        double gamma, int N, BerDiag* diag) {
  return clamped(
      erfc_arg_secomc_deterministic_highsnr(h0_sq, h1_sq, gamma, N), diag);
}

double ber_nocomc_from_secomc(double p) {
  if (!(p >= 0.0) || !(p <= 0.5)) {
    throw std::domain_error(
        "ber_nocomc_from_secomc: p must lie in [0, 0.5]");
  }
  return 2.0 * p * (1.0 - p);
}

double ber_nocomc_gaussian_exact(const VarPair& v, int N) {
  return ber_nocomc_from_secomc(ber_secomc_gaussian_exact(v, N));
}

double ber_nocomc_gaussian_approx(double h0_sq, double h1_sq, double gamma,
                                  int N, BerDiag* diag) {
  return ber_nocomc_from_secomc(
      ber_secomc_gaussian_approx(h0_sq, h1_sq, gamma, N, diag));
}

double ber_nocomc_gaussian_floor(double h0_sq, double h1_sq, int N,
                                 BerDiag* diag) {
  return ber_nocomc_from_secomc(
      ber_secomc_gaussian_floor(h0_sq, h1_sq, N, diag));
}

double ber_nocomc_gaussian_exact_floor(double h0_sq, double h1_sq, int N) {
  return ber_nocomc_from_secomc(
      ber_secomc_gaussian_exact_floor(h0_sq, h1_sq, N));
}

double ber_nocomc_deterministic_approx(double h0_sq, double h1_sq,
                                       double gamma, int N, BerDiag* diag) {
  return ber_nocomc_from_secomc(
      ber_secomc_deterministic_approx(h0_sq, h1_sq, gamma, N, diag));
}

double ber_nocomc_deterministic_highsnr(double h0_sq, double h1_sq,
                                        double gamma, int N, BerDiag* diag) {
  return ber_nocomc_from_secomc(
      ber_secomc_deterministic_highsnr(h0_sq, h1_sq, gamma, N, diag));
}

double ber_nocomc_erf_form(double erfc_argument) {
  const double e = special::erf_kernel(erfc_argument);
  return 0.5 - 0.5 * e * e;
}

double log_ber_from_erfc_arg(double erfc_argument) {
  return special::log_half_erfc(erfc_argument);
}

}  // namespace absim::analysis
