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

#include "absim/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <iterator>
#include <ostream>
#include <random>

#include "absim/analysis.hpp"
#include "absim/coding.hpp"
#include "absim/detectors.hpp"
#include "absim/montecarlo.hpp"
#include "absim/reference.hpp"
#include "absim/rng.hpp"
#include "absim/signal_model.hpp"
#include "absim/special.hpp"

namespace absim::selftest {

namespace {

std::string strf(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

double rel_err(double got, double want) {
  if (want == 0.0) {
    return std::abs(got);
  }
  return std::abs(got - want) / std::abs(want);
}

// Decode(encode) identity for every payload of length <= 8, both schemes,
// both differential references.
CheckResult check_coding_round_trips() {
  long cases = 0;
  for (int len = 0; len <= 8; ++len) {
    for (unsigned pattern = 0; pattern < (1u << len); ++pattern) {
      std::vector<int> bits(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i) {
        bits[static_cast<std::size_t>(i)] = (pattern >> i) & 1u;
      }
      if (manchester_decode(manchester_encode(bits)) != bits) {
        return {"coding-round-trips", false,
                strf("manchester mismatch at len %d pattern %u", len, pattern)};
      }
      ++cases;
      for (ChipPair ref : {kPair10, kPair01}) {
        if (diff_manchester_decode(diff_manchester_encode(bits, ref)) != bits) {
          return {"coding-round-trips", false,
                  strf("differential mismatch at len %d pattern %u ref (%d,%d)",
                       len, pattern, ref.first, ref.second)};
        }
        ++cases;
      }
    }
  }
  return {"coding-round-trips", true, strf("%ld round trips", cases)};
}

// The exact Manchester BER evaluated two ways: the production regularized
// incomplete beta against the literal gamma-ratio/hypergeometric series.
CheckResult check_exact_ber_beta_vs_hypergeometric() {
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    for (double ratio : {1.0, 1.5, 2.0, 4.0}) {
      const double beta_route =
          analysis::ber_secomc_gaussian_exact(analysis::VarPair(1.0, ratio), n);
      const double series_route =
          reference::ber_manchester_exact_hypergeometric(1.0, ratio, n);
      worst = std::max(worst, std::abs(beta_route - series_route));
    }
  }
  return {"exact-ber-beta-vs-hypergeometric", worst <= 1e-10,
          strf("max |beta - series| = %.3e over 40 points", worst)};
}

// Production erfc kernel against frozen 50-digit values and against the
// in-repo series/continued-fraction reference implementation.
CheckResult check_erfc_kernel_reference() {
  double worst = 0.0;
  for (const auto& row : reference::kErfcTable) {
    worst = std::max(worst, rel_err(special::erfc_kernel(row.x), row.value));
  }
  for (double x : {0.05, 0.3, 0.7, 1.3, 2.5, 4.0, 6.5, 10.0, 15.0, 22.0}) {
    worst = std::max(
        worst, rel_err(special::erfc_kernel(x), reference::erfc_reference(x)));
  }
  return {"erfc-kernel-reference", worst <= 1e-12,
          strf("max rel err = %.3e over 22 points", worst)};
}

// log-domain erfc far past linear underflow, plus agreement of the direct
// and asymptotic routes around their switchover.
CheckResult check_log_erfc_deep_tail() {
  double worst = 0.0;
  for (const auto& row : reference::kLogHalfErfcTable) {
    worst = std::max(worst, rel_err(special::log_half_erfc(row.x), row.value));
  }
  for (double x : {25.2, 25.6, 26.0}) {
    const double direct = std::log(0.5 * reference::erfc_reference(x));
    worst = std::max(worst, rel_err(special::log_half_erfc(x), direct));
  }
  return {"log-erfc-deep-tail", worst <= 1e-12,
          strf("max rel err = %.3e over 12 points", worst)};
}

CheckResult check_reg_inc_beta_reference() {
  double worst_rel = 0.0;
  bool ok = true;
  for (const auto& row : reference::kRegIncBetaTable) {
    const double got = special::reg_inc_beta(row.x, row.a, row.b);
    const double err = std::abs(got - row.value);
    worst_rel = std::max(worst_rel, rel_err(got, row.value));
    ok = ok && err <= 1e-13 + 1e-11 * std::abs(row.value);
  }
  return {"reg-inc-beta-reference", ok,
          strf("max rel err = %.3e over 12 points", worst_rel)};
}

// 2p(1-p) composition built on erfc against the published erf-squared form
// built on erf; algebraically identical.
CheckResult check_nocomc_erf_identity() {
  double worst = 0.0;
  for (double arg : {0.0, 0.1, 0.5, 1.0, 2.0, 3.5, 5.0}) {
    const double p = special::half_erfc_clamped(arg);
    const double composed = analysis::ber_nocomc_from_secomc(p);
    const double erf_form = analysis::ber_nocomc_erf_form(arg);
    worst = std::max(worst, std::abs(composed - erf_form));
  }
  return {"nocomc-erf-identity", worst <= 1e-12,
          strf("max |2p(1-p) - erf form| = %.3e over 7 points", worst)};
}

// Provable orderings and monotonicities of the closed forms on a parameter
// grid: baseline asymptote <= Manchester asymptote (quadratic vs arithmetic
// mean in the denominator), exact BER in (0, 1/2] and decreasing in N and
// gamma, bounded below by its own SNR -> infinity floor, and the
// differential composition between p and 2p.
CheckResult check_analytic_ordering() {
  const double h0_sq = 1.0;
  const double slack = 1e-15;
  long checks = 0;
  const double gammas[] = {1.0, 3.1622776601683795, 10.0, 100.0};
  const int ns[] = {5, 20, 100};
  for (double h1_sq : {1.2, 2.0, 5.0}) {
    for (int ni = 0; ni < 3; ++ni) {
      double prev_gamma_exact = 1.0;
      for (int gi = 0; gi < 4; ++gi) {
        const double gamma = gammas[gi];
        const int n = ns[ni];
        const auto v = analysis::VarPair::from_gamma(h0_sq, h1_sq, gamma);
        const double exact = analysis::ber_secomc_gaussian_exact(v, n);
        const double approx =
            analysis::ber_secomc_gaussian_approx(h0_sq, h1_sq, gamma, n);
        const double base =
            analysis::ber_baseline_gaussian_approx(h0_sq, h1_sq, gamma, n);
        const double floor =
            analysis::ber_secomc_gaussian_exact_floor(h0_sq, h1_sq, n);
        const double composed = analysis::ber_nocomc_gaussian_exact(v, n);
        if (!(base <= approx + slack)) {
          return {"analytic-ordering", false,
                  strf("baseline %.6e > secomc %.6e at h1_sq=%g gamma=%g N=%d",
                       base, approx, h1_sq, gamma, n)};
        }
        if (!(exact > 0.0 && exact <= 0.5)) {
          return {"analytic-ordering", false,
                  strf("exact %.6e outside (0, 0.5]", exact)};
        }
        if (!(exact >= floor - slack)) {
          return {"analytic-ordering", false,
                  strf("exact %.6e below floor %.6e", exact, floor)};
        }
        if (!(composed >= exact - slack && composed <= 2.0 * exact + slack)) {
          return {"analytic-ordering", false,
                  strf("composition %.6e outside [p, 2p] at p=%.6e", composed,
                       exact)};
        }
        if (gi > 0 && !(exact <= prev_gamma_exact + slack)) {
          return {"analytic-ordering", false,
                  strf("exact not decreasing in gamma at h1_sq=%g N=%d", h1_sq,
                       ns[ni])};
        }
        prev_gamma_exact = exact;
        if (ni > 0) {
          const double coarser = analysis::ber_secomc_gaussian_exact(
              v, ns[ni - 1]);
          if (!(exact <= coarser + slack)) {
            return {"analytic-ordering", false,
                    strf("exact not decreasing in N at h1_sq=%g gamma=%g",
                         h1_sq, gamma)};
          }
        }
        checks += 6;
      }
    }
  }
  return {"analytic-ordering", true, strf("%ld inequalities hold", checks)};
}

CheckResult check_rcd_synthesis_roundtrip() {
  double worst = 0.0;
  for (RcdBranch branch : {RcdBranch::h1_stronger, RcdBranch::h0_stronger}) {
    for (double r : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0}) {
      const ChannelState ch = synthesize_channel_with_rcd(r, branch);
      worst = std::max(worst, std::abs(rcd(ch.h0, ch.h1) - r));
      const bool h1_wins = ch.h1_sq() >= ch.h0_sq();
      if (h1_wins != (branch == RcdBranch::h1_stronger) && r > 0.0) {
        return {"rcd-synthesis-roundtrip", false,
                strf("branch violated at r=%g", r)};
      }
      // Consistency of the back-filled physical gains.
      const std::complex<double> rebuilt =
          ch.h_sr + ch.eta * ch.h_tr * ch.h_st;
      if (std::abs(rebuilt - ch.h1) > 1e-12) {
        return {"rcd-synthesis-roundtrip", false,
                strf("h1 decomposition broken at r=%g", r)};
      }
    }
  }
  return {"rcd-synthesis-roundtrip", worst <= 1e-10,
          strf("max |rcd - target| = %.3e over 16 points", worst)};
}

// Chi-square energy-pair Monte Carlo against the exact closed form, two
// cells, 1e5 pair draws each, 5 standard errors at the analytic value.
CheckResult check_exact_ber_montecarlo() {
  const long draws = 100000;
  double worst_z = 0.0;
  for (int n : {5, 20}) {
    const analysis::VarPair v(1.0, 2.0);
    const double p = analysis::ber_secomc_gaussian_exact(v, n);
    std::mt19937_64 gen(rng::mix64(0x5e1f7e57u + static_cast<unsigned>(n)));
    // Under a Gaussian source a chip energy is Gamma(N, sigma_chip²); bit
    // 1's pair (0,1) puts the h0 hypothesis in the first half.
    std::gamma_distribution<double> g0(static_cast<double>(n), v.sigma0_sq);
    std::gamma_distribution<double> g1(static_cast<double>(n), v.sigma1_sq);
    std::bernoulli_distribution bern(0.5);
    const SeCoMCState genie =
        SeCoMCState::genie(SigmaRelation::sigma1_greater);
    long errors = 0;
    for (long i = 0; i < draws; ++i) {
      const int bit = bern(gen) ? 1 : 0;
      EnergyPair e;
      if (bit == 1) {
        e.Za = g0(gen);
        e.Zb = g1(gen);
      } else {
        e.Za = g1(gen);
        e.Zb = g0(gen);
      }
      errors += (secomc_detect(genie, e) != bit);
    }
    const double p_hat = static_cast<double>(errors) / draws;
    const double se = std::sqrt(p * (1.0 - p) / draws);
    worst_z = std::max(worst_z, std::abs(p_hat - p) / se);
  }
  return {"exact-ber-montecarlo", worst_z <= 5.0,
          strf("max |z| = %.2f over 2 cells (gate 5)", worst_z)};
}

// Noiseless constant-modulus link: every detector separates the chip
// energies exactly, so there must be no errors at all.
CheckResult check_noiseless_psk_zero_errors() {
  mc::ExperimentConfig cfg;
  cfg.channel_mode = mc::ChannelMode::fixed_channels;
  cfg.fixed = fixed_channel({1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, 0.5);
  cfg.source.kind = SourceKind::constant_modulus;
  cfg.source.Ps = 1.0;
  cfg.source.modulation_order = 8;
  cfg.noise.Nw = 0.0;
  cfg.link.N = 10;
  cfg.link.K = 30;
  cfg.link.T = 2;
  cfg.blocks = 40;
  cfg.seed = 11;
  const mc::EstimateSet est = mc::estimate_ber(cfg);
  long errors = 0;
  long trials = 0;
  for (const auto& e : est) {
    if (e) {
      errors += e->errors;
      trials += e->trials;
    }
  }
  return {"noiseless-psk-zero-errors", errors == 0,
          strf("%ld errors in %ld trials across 4 detectors", errors, trials)};
}

// Differential composition on a live link: simulated NoCoMC BER against
// 2p(1-p) at the simulated genie BER, shared fixed channel.
CheckResult check_nocomc_composition_montecarlo() {
  mc::ExperimentConfig cfg;
  cfg.channel_mode = mc::ChannelMode::fixed_rcd;
  cfg.rcd_value = 0.5;
  cfg.link.N = 20;
  cfg.link.K = 30;
  cfg.link.T = 2;
  cfg.link.gamma = 3.1622776601683795;  // 5 dB
  cfg.source.Ps = cfg.link.gamma;
  cfg.noise.Nw = 1.0;
  cfg.blocks = 3334;  // ~1e5 bits
  cfg.seed = 7;
  cfg.detectors = {mc::Detector::secomc_genie, mc::Detector::nocomc};
  const mc::EstimateSet est = mc::estimate_ber(cfg);
  const mc::BerEstimate genie =
      *est[static_cast<int>(mc::Detector::secomc_genie)];
  const mc::BerEstimate nocomc = *est[static_cast<int>(mc::Detector::nocomc)];
  const double predicted = analysis::ber_nocomc_from_secomc(genie.ber);
  // Propagate the genie CI through d/dp 2p(1-p) = 2 - 4p.
  const double combined =
      std::sqrt(nocomc.half_width_95 * nocomc.half_width_95 +
                std::pow((2.0 - 4.0 * genie.ber) * genie.half_width_95, 2));
  const double gap = std::abs(nocomc.ber - predicted);
  return {"nocomc-composition-montecarlo", gap <= 5.0 * combined,
          strf("|sim - 2p(1-p)| = %.3e vs 5*CI = %.3e", gap, 5.0 * combined)};
}

// rcd = 0 makes the two hypotheses identical; every detector must sit at
// coin-flip BER.
CheckResult check_degenerate_rcd0() {
  mc::ExperimentConfig cfg;
  cfg.channel_mode = mc::ChannelMode::fixed_rcd;
  cfg.rcd_value = 0.0;
  cfg.link.N = 20;
  cfg.link.K = 30;
  cfg.link.T = 2;
  cfg.link.gamma = 10.0;
  cfg.source.Ps = 10.0;
  cfg.noise.Nw = 1.0;
  cfg.blocks = 1000;  // 3e4 bits per detector
  cfg.seed = 3;
  const mc::EstimateSet est = mc::estimate_ber(cfg);
  for (mc::Detector d : mc::kAllDetectors) {
    const auto& e = est[static_cast<int>(d)];
    if (!e || e->ber < 0.45 || e->ber > 0.55) {
      return {"degenerate-rcd0", false,
              strf("%s ber %.4f outside [0.45, 0.55]", mc::to_string(d),
                   e ? e->ber : -1.0)};
    }
  }
  return {"degenerate-rcd0", true, "all four detectors within [0.45, 0.55]"};
}

}  // namespace

std::vector<CheckResult> run_all() {
  // A check that throws is a failed check, not a crashed self-test: a
  // corrupted build must still produce a full report and exit code 3.
  struct Entry {
    const char* name;
    CheckResult (*fn)();
  };
  const Entry entries[] = {
      {"coding-round-trips", check_coding_round_trips},
      {"exact-ber-beta-vs-hypergeometric",
       check_exact_ber_beta_vs_hypergeometric},
      {"erfc-kernel-reference", check_erfc_kernel_reference},
      {"log-erfc-deep-tail", check_log_erfc_deep_tail},
      {"reg-inc-beta-reference", check_reg_inc_beta_reference},
      {"nocomc-erf-identity", check_nocomc_erf_identity},
      {"analytic-ordering", check_analytic_ordering},
      {"rcd-synthesis-roundtrip", check_rcd_synthesis_roundtrip},
      {"exact-ber-montecarlo", check_exact_ber_montecarlo},
      {"noiseless-psk-zero-errors", check_noiseless_psk_zero_errors},
      {"nocomc-composition-montecarlo", check_nocomc_composition_montecarlo},
      {"degenerate-rcd0", check_degenerate_rcd0},
  };
  std::vector<CheckResult> results;
  results.reserve(std::size(entries));
  for (const Entry& entry : entries) {
    try {
      results.push_back(entry.fn());
    } catch (const std::exception& e) {
      results.push_back(
          {entry.name, false, std::string("threw: ") + e.what()});
    }
  }
  return results;
}

int run_and_print(std::ostream& os) {
  const std::vector<CheckResult> results = run_all();
  int failed = 0;
  for (const CheckResult& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail
       << "\n";
    failed += r.passed ? 0 : 1;
  }
  if (failed == 0) {
    os << "selftest: all " << results.size() << " checks passed\n";
  } else {
    os << "selftest: " << failed << " of " << results.size()
       << " checks FAILED\n";
  }
  return failed == 0 ? 0 : 3;
}

}  // namespace absim::selftest
