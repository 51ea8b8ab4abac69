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

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "absim/reference.hpp"
#include "absim/signal_model.hpp"

namespace analysis = absim::analysis;
namespace reference = absim::reference;

using analysis::BerDiag;
using analysis::DeterministicMoments;
using analysis::GaussianMoments;
using analysis::VarPair;

namespace {

double rel_err(double got, double want) {
  if (want == 0.0) {
    return std::abs(got);
  }
  return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("VarPair construction and accessors") {
  const VarPair v(3.0, 2.0);
  CHECK(v.sigma0_sq == 3.0);
  CHECK(v.sigma1_sq == 2.0);
  CHECK(v.sigma_n_sq() == 2.0);
  CHECK(v.sigma_m_sq() == 3.0);
  CHECK_THROWS_AS(VarPair(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(VarPair(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("VarPair::from_gamma sets Ps = gamma, Nw = 1") {
  const VarPair v = VarPair::from_gamma(1.0, 2.0, 10.0);
  CHECK(v.sigma0_sq == doctest::Approx(11.0).epsilon(1e-15));
  CHECK(v.sigma1_sq == doctest::Approx(21.0).epsilon(1e-15));
  // gamma = 1 (0 dB at the CLI boundary) adds one noise unit per channel.
  const VarPair unit = VarPair::from_gamma(1.0, 2.0, 1.0);
  CHECK(unit.sigma0_sq == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(unit.sigma1_sq == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)VarPair::from_gamma(1.0, 2.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("VarPair::from_channel applies sigma_sq to both gains") {
  const absim::ChannelState ch = absim::fixed_channel(1.0, 1.0, 2.0, 0.5);
  // h0 = 1, h1 = 2: powers 1 and 4.
  const VarPair v = VarPair::from_channel(ch, 3.0, 0.5);
  CHECK(v.sigma0_sq == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(v.sigma1_sq == doctest::Approx(12.5).epsilon(1e-15));
}

TEST_CASE("moment structs match their closed forms") {
  const GaussianMoments g = GaussianMoments::make(VarPair(2.0, 3.0), 10);
  CHECK(g.mu_g0 == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(g.mu_g1 == doctest::Approx(30.0).epsilon(1e-15));
  CHECK(g.var_g0 == doctest::Approx(40.0).epsilon(1e-15));
  CHECK(g.var_g1 == doctest::Approx(90.0).epsilon(1e-15));

  const DeterministicMoments d =
      DeterministicMoments::make(1.0, 2.0, 4.0, 0.5, 10);
  CHECK(d.mu_p0 == doctest::Approx(45.0).epsilon(1e-15));
  CHECK(d.mu_p1 == doctest::Approx(85.0).epsilon(1e-15));
  CHECK(d.var_p0 == doctest::Approx(42.5).epsilon(1e-15));
  CHECK(d.var_p1 == doctest::Approx(82.5).epsilon(1e-15));

  CHECK_THROWS_AS((void)DeterministicMoments::make(1.0, 2.0, 0.0, 1.0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)GaussianMoments::make(VarPair(1.0, 2.0), 0),
                  std::invalid_argument);
}

TEST_CASE("deterministic-source energies fluctuate less than Gaussian ones") {
  for (double ps : {0.5, 2.0, 20.0}) {
    for (double nw : {0.1, 1.0}) {
      CAPTURE(ps);
      CAPTURE(nw);
      const VarPair v(1.0 * ps + nw, 2.0 * ps + nw);
      const GaussianMoments g = GaussianMoments::make(v, 8);
      const DeterministicMoments d =
          DeterministicMoments::make(1.0, 2.0, ps, nw, 8);
      CHECK(d.mu_p0 == doctest::Approx(g.mu_g0).epsilon(1e-14));
      CHECK(d.mu_p1 == doctest::Approx(g.mu_g1).epsilon(1e-14));
      CHECK(d.var_p0 <= g.var_g0);
      CHECK(d.var_p1 <= g.var_g1);
    }
  }
}

TEST_CASE("exact Manchester BER matches frozen high-precision values") {
  struct Row {
    double s0, s1;
    int n;
    double want;
  };
  const Row rows[] = {
      {1.0, 2.0, 1, 0.3333333333333333},
      {1.0, 4.0, 1, 0.2},
      {1.0, 1.1, 1, 0.47619047619047616},
      {1.0, 2.0, 5, 0.14484580602550423},
      {1.0, 4.0, 5, 0.01958144},
      {1.0, 1.1, 5, 0.44158304304605456},
      {1.0, 2.0, 20, 0.015496230356429767},
      {1.0, 4.0, 20, 1.335958173459541e-05},
      {1.0, 1.1, 20, 0.3822932881995572},
  };
  for (const Row& r : rows) {
    CAPTURE(r.s0);
    CAPTURE(r.s1);
    CAPTURE(r.n);
    const double got =
        analysis::ber_secomc_gaussian_exact(VarPair(r.s0, r.s1), r.n);
    CHECK(rel_err(got, r.want) <= 1e-11);
  }
}

TEST_CASE("exact Manchester BER properties") {
  // Symmetric in the variance pair.
  CHECK(analysis::ber_secomc_gaussian_exact(VarPair(1.0, 2.0), 7) ==
        analysis::ber_secomc_gaussian_exact(VarPair(2.0, 1.0), 7));
  // Equal variances are undecidable: exactly one half.
  CHECK(rel_err(analysis::ber_secomc_gaussian_exact(VarPair(3.0, 3.0), 9),
                0.5) <= 1e-12);
  // Scale invariance: only the ratio matters.
  CHECK(rel_err(analysis::ber_secomc_gaussian_exact(VarPair(1.0, 2.5), 6),
                analysis::ber_secomc_gaussian_exact(VarPair(4.0, 10.0), 6)) <=
        1e-12);
  // Strictly decreasing in N and bounded by (0, 1/2].
  double prev = 1.0;
  for (int n : {1, 2, 5, 10, 30, 80}) {
    const double p = analysis::ber_secomc_gaussian_exact(VarPair(1.0, 2.0), n);
    CHECK(p > 0.0);
    CHECK(p <= 0.5);
    CHECK(p < prev);
    prev = p;
  }
  CHECK_THROWS_AS(
      (void)analysis::ber_secomc_gaussian_exact(VarPair(1.0, 2.0), 0),
      std::invalid_argument);
}

TEST_CASE("exact Manchester BER agrees with the hypergeometric oracle") {
  for (int n : {1, 3, 10, 40, 100}) {
    for (double ratio : {1.3, 2.0, 6.0}) {
      CAPTURE(n);
      CAPTURE(ratio);
      const double beta =
          analysis::ber_secomc_gaussian_exact(VarPair(1.0, ratio), n);
      const double series =
          reference::ber_manchester_exact_hypergeometric(1.0, ratio, n);
      CHECK(rel_err(beta, series) <= 1e-9);
    }
  }
}

TEST_CASE("CLT approximations match frozen values") {
  const double g_half = std::sqrt(10.0);  // 5 dB
  CHECK(rel_err(analysis::ber_secomc_gaussian_approx(1.0, 2.0, g_half, 100),
                8.71462798234929e-05) <= 1e-11);
  CHECK(rel_err(analysis::ber_secomc_gaussian_approx(1.0, 2.0, 10.0, 20),
                0.029616719393066312) <= 1e-11);
  CHECK(rel_err(analysis::ber_secomc_gaussian_floor(1.0, 2.0, 20),
                0.02275013194817921) <= 1e-11);
  CHECK(rel_err(analysis::ber_baseline_gaussian_approx(1.0, 2.0, 10.0, 20),
                0.024053413944259697) <= 1e-11);
  CHECK(rel_err(analysis::ber_baseline_gaussian_approx(1.0, 1.2, g_half, 100),
                0.15899963702362016) <= 1e-11);
  // Deep-tail deterministic forms; erfc argument ~ 13, still representable.
  CHECK(rel_err(analysis::ber_secomc_deterministic_approx(1.0, 2.0, 100.0, 20),
                1.5738207451057234e-74) <= 1e-10);
  CHECK(
      rel_err(analysis::ber_secomc_deterministic_highsnr(1.0, 2.0, 100.0, 20),
              9.03158116547045e-75) <= 1e-10);
}

TEST_CASE("exact floor is the high-SNR limit of the exact BER") {
  CHECK(rel_err(analysis::ber_secomc_gaussian_exact_floor(1.0, 2.0, 20),
                0.015496230356429767) <= 1e-11);
  // Identical to the exact BER at noiseless variances.
  CHECK(analysis::ber_secomc_gaussian_exact_floor(1.0, 2.0, 20) ==
        analysis::ber_secomc_gaussian_exact(VarPair(1.0, 2.0), 20));
  // The exact BER decreases toward the floor as gamma grows.
  const double floor20 = analysis::ber_secomc_gaussian_exact_floor(1.0, 2.0, 20);
  double prev = 1.0;
  for (double gamma : {0.1, 1.0, 10.0, 100.0, 1e4}) {
    const double p = analysis::ber_secomc_gaussian_exact(
        VarPair::from_gamma(1.0, 2.0, gamma), 20);
    CHECK(p >= floor20);
    CHECK(p < prev);
    prev = p;
  }
  // The CLT floor is an approximation of, not equal to, the exact floor.
  CHECK(analysis::ber_secomc_gaussian_floor(1.0, 2.0, 20) !=
        analysis::ber_secomc_gaussian_exact_floor(1.0, 2.0, 20));
}

TEST_CASE("returned BER values are half_erfc of the exposed arguments") {
  const double h0 = 1.0;
  const double h1 = 2.0;
  const double gamma = 10.0;
  const int n = 20;
  CHECK(analysis::ber_secomc_gaussian_approx(h0, h1, gamma, n) ==
        doctest::Approx(0.5 * std::erfc(analysis::erfc_arg_secomc_gaussian_approx(
                                  h0, h1, gamma, n)))
            .epsilon(1e-14));
  CHECK(analysis::ber_secomc_gaussian_floor(h0, h1, n) ==
        doctest::Approx(0.5 * std::erfc(analysis::erfc_arg_secomc_gaussian_floor(
                                  h0, h1, n)))
            .epsilon(1e-14));
  CHECK(analysis::ber_baseline_gaussian_approx(h0, h1, gamma, n) ==
        doctest::Approx(0.5 *
                        std::erfc(analysis::erfc_arg_baseline_gaussian_approx(
                            h0, h1, gamma, n)))
            .epsilon(1e-14));
  CHECK(analysis::ber_secomc_deterministic_approx(h0, h1, gamma, n) ==
        doctest::Approx(
            0.5 * std::erfc(analysis::erfc_arg_secomc_deterministic_approx(
                      h0, h1, gamma, n)))
            .epsilon(1e-14));
  CHECK(analysis::ber_secomc_deterministic_highsnr(h0, h1, gamma, n) ==
        doctest::Approx(
            0.5 * std::erfc(analysis::erfc_arg_secomc_deterministic_highsnr(
                      h0, h1, gamma, n)))
            .epsilon(1e-14));
}

TEST_CASE("underflowing CLT forms clamp to zero and set the diagnostic") {
  BerDiag diag;
  const double v =
      analysis::ber_secomc_deterministic_approx(1.0, 2.0, 1e8, 100, &diag);
  CHECK(v == 0.0);
  CHECK(diag.underflowed);

  diag.underflowed = true;
  const double small =
      analysis::ber_secomc_gaussian_approx(1.0, 2.0, 10.0, 20, &diag);
  CHECK(small > 0.0);
  CHECK_FALSE(diag.underflowed);
}

TEST_CASE("high-SNR deterministic form converges to the CLT form") {
  // In the erfc-argument domain the two coincide as gamma grows.
  const double aa =
      analysis::erfc_arg_secomc_deterministic_approx(1.0, 2.0, 1e6, 20);
  const double ah =
      analysis::erfc_arg_secomc_deterministic_highsnr(1.0, 2.0, 1e6, 20);
  CHECK(ah / aa > 1.0);
  CHECK(ah / aa <= 1.0 + 1e-6);

  // In the probability domain, compare where the ratio stays finite: the
  // linear values underflow here, so form the ratio in log space.
  const double la = analysis::log_ber_from_erfc_arg(
      analysis::erfc_arg_secomc_deterministic_approx(1.0, 1.2, 1e6, 4));
  const double lh = analysis::log_ber_from_erfc_arg(
      analysis::erfc_arg_secomc_deterministic_highsnr(1.0, 1.2, 1e6, 4));
  const double ratio = std::exp(la - lh);
  CHECK(ratio > 1.0);
  CHECK(std::abs(ratio - 1.0) <= 0.02);
}

TEST_CASE("log_ber_from_erfc_arg matches the linear path where it exists") {
  for (double x : {0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    CAPTURE(x);
    const double direct = std::log(0.5 * std::erfc(x));
    CHECK(rel_err(analysis::log_ber_from_erfc_arg(x), direct) <= 1e-12);
  }
  // Far beyond linear underflow it must stay finite and ordered.
  const double deep1 = analysis::log_ber_from_erfc_arg(40.0);
  const double deep2 = analysis::log_ber_from_erfc_arg(50.0);
  CHECK(std::isfinite(deep1));
  CHECK(std::isfinite(deep2));
  CHECK(deep2 < deep1);
}

TEST_CASE("differential composition 2p(1-p)") {
  CHECK(analysis::ber_nocomc_from_secomc(0.0) == 0.0);
  CHECK(analysis::ber_nocomc_from_secomc(0.5) == doctest::Approx(0.5));
  CHECK(analysis::ber_nocomc_from_secomc(0.1) ==
        doctest::Approx(0.18).epsilon(1e-15));
  CHECK(analysis::ber_nocomc_from_secomc(0.0125) ==
        doctest::Approx(0.0246875).epsilon(1e-15));
  CHECK_THROWS_AS((void)analysis::ber_nocomc_from_secomc(-0.01),
                  std::domain_error);
  CHECK_THROWS_AS((void)analysis::ber_nocomc_from_secomc(0.51),
                  std::domain_error);
  // Strictly increasing on [0, 1/2]: composing cannot reorder detectors.
  double prev = -1.0;
  for (double p : {0.0, 0.01, 0.1, 0.25, 0.4, 0.5}) {
    const double c = analysis::ber_nocomc_from_secomc(p);
    CHECK(c > prev);
    CHECK(c >= p);
    CHECK(c <= 2.0 * p);
    prev = c;
  }
}

TEST_CASE("composed forms equal the composition of their Manchester forms") {
  const double h0 = 1.0;
  const double h1 = 2.0;
  const double gamma = 10.0;
  const int n = 20;
  const VarPair v = VarPair::from_gamma(h0, h1, gamma);
  CHECK(analysis::ber_nocomc_gaussian_exact(v, n) ==
        doctest::Approx(analysis::ber_nocomc_from_secomc(
                            analysis::ber_secomc_gaussian_exact(v, n)))
            .epsilon(1e-14));
  CHECK(analysis::ber_nocomc_gaussian_approx(h0, h1, gamma, n) ==
        doctest::Approx(analysis::ber_nocomc_from_secomc(
                            analysis::ber_secomc_gaussian_approx(h0, h1, gamma,
                                                                 n)))
            .epsilon(1e-14));
  CHECK(analysis::ber_nocomc_gaussian_floor(h0, h1, n) ==
        doctest::Approx(analysis::ber_nocomc_from_secomc(
                            analysis::ber_secomc_gaussian_floor(h0, h1, n)))
            .epsilon(1e-14));
  CHECK(analysis::ber_nocomc_gaussian_exact_floor(h0, h1, n) ==
        doctest::Approx(
            analysis::ber_nocomc_from_secomc(
                analysis::ber_secomc_gaussian_exact_floor(h0, h1, n)))
            .epsilon(1e-14));
  CHECK(analysis::ber_nocomc_deterministic_approx(h0, h1, gamma, n) ==
        doctest::Approx(
            analysis::ber_nocomc_from_secomc(
                analysis::ber_secomc_deterministic_approx(h0, h1, gamma, n)))
            .epsilon(1e-14));
  CHECK(analysis::ber_nocomc_deterministic_highsnr(h0, h1, gamma, n) ==
        doctest::Approx(
            analysis::ber_nocomc_from_secomc(
                analysis::ber_secomc_deterministic_highsnr(h0, h1, gamma, n)))
            .epsilon(1e-14));
}

TEST_CASE("erf-squared form is an independent route to the composition") {
  for (double x : {0.0, 0.3, 1.0, 2.0, 3.5, 5.0}) {
    CAPTURE(x);
    const double p = 0.5 * std::erfc(x);
    const double composed = analysis::ber_nocomc_from_secomc(p);
    CHECK(std::abs(analysis::ber_nocomc_erf_form(x) - composed) <= 1e-12);
  }
}

TEST_CASE("analytic ordering: baseline approximation never loses to secomc") {
  // (v0+v1)² <= 2(v0²+v1²) makes the baseline erfc argument the larger one.
  for (double h1_sq : {1.2, 2.0, 5.0}) {
    for (double gamma : {1.0, 3.1622776601683795, 10.0, 100.0}) {
      for (int n : {5, 20, 100}) {
        CAPTURE(h1_sq);
        CAPTURE(gamma);
        CAPTURE(n);
        const double base =
            analysis::ber_baseline_gaussian_approx(1.0, h1_sq, gamma, n);
        const double sec =
            analysis::ber_secomc_gaussian_approx(1.0, h1_sq, gamma, n);
        CHECK(base <= sec);
      }
    }
  }
}

TEST_CASE("analysis input validation") {
  CHECK_THROWS_AS(
      (void)analysis::ber_secomc_gaussian_approx(-1.0, 2.0, 10.0, 20),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)analysis::ber_secomc_gaussian_approx(1.0, 2.0, 0.0, 20),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)analysis::ber_secomc_gaussian_approx(1.0, 2.0, 10.0, 0),
      std::invalid_argument);
  CHECK_THROWS_AS((void)analysis::ber_secomc_gaussian_floor(0.0, 0.0, 20),
                  std::invalid_argument);
}
