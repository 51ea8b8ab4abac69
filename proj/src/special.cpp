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

#include "absim/special.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace absim::special {
namespace {

constexpr double kLnSqrtPi = 0.5723649429247000870717136756765;
constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589031215;

// Asymptotic tail series for erfc(x)·x·√π·e^{x²} = 1 - 1/(2x²) + 3/(4x⁴) - …
// Truncated where terms stop shrinking; at x >= 25 that is far below 1e-16.
double log_erfc_asymptotic(double x) {
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 20; ++k) {
    const double next = term * -(2.0 * k - 1.0) * inv2x2;
    if (std::abs(next) >= std::abs(term)) {
      break;  // series started diverging; stop at the smallest term
    }
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * sum) {
      break;
    }
  }
  return -x * x - std::log(x) - kLnSqrtPi + std::log(sum);
}

}  // namespace

double erfc_kernel(double x) {
#if defined(ABSIM_FAULT_INJECT_ERFC)
  // Deliberate corruption for the negative self-test build: large enough to
  // trip every 1e-12 identity, small enough to leave curve shapes intact so
  // only the precision checks (not unrelated plumbing) catch it.
  return std::erfc(x) * (1.0 + 1e-6);
#else
  return std::erfc(x);
#endif
}

double erf_kernel(double x) { return std::erf(x); }

double log_half_erfc(double x) {
  if (!(x > 25.0)) {
    // erfc(25) ~ 8e-274: no underflow yet, the direct path is exact here.
    return std::log(0.5 * erfc_kernel(x));
  }
  return log_erfc_asymptotic(x) - std::log(2.0);
}

double half_erfc_clamped(double x, bool* underflowed) {
  if (underflowed != nullptr) {
    *underflowed = false;
  }
  const double v = 0.5 * erfc_kernel(x);
  if (v > 0.0 && v >= DBL_MIN) {
    return v;
  }
  if (std::isinf(x) && x > 0) {
    return 0.0;  // exact, not an underflow
  }
  if (underflowed != nullptr) {
    *underflowed = true;
  }
  return 0.0;
}

double erfc_inv(double p) {
  if (!(p > 0.0) || !(p < 2.0)) {
    throw std::domain_error("erfc_inv: argument must lie in (0, 2)");
  }
  // erfc_inv(p) = -erfc_inv(2-p); reduce to the right half, p <= 1, x >= 0.
  const bool negate = p > 1.0;
  const double q = negate ? 2.0 - p : p;

  // Initial guess: crude tail inversion of erfc(x) ~ e^{-x²}/(x√π).
  double x;
  if (q > 0.1) {
    x = 0.8 * (1.0 - q);  // near the origin erfc(x) ≈ 1 - 2x/√π
  } else {
    x = std::sqrt(-std::log(q));
  }

  // Newton iterations on g(x) = log(erfc(x)/2) - log(q/2); the log-domain
  // residual stays well scaled down to q ~ 1e-300.
  const double target = std::log(q) - std::log(2.0);
  for (int it = 0; it < 60; ++it) {
    const double lhe = log_half_erfc(x);
    // d/dx log erfc = -2 e^{-x²} / (√π erfc) = -(2/√π) exp(-x² - log erfc)
    const double deriv =
        -kTwoOverSqrtPi * std::exp(-x * x - (lhe + std::log(2.0)));
    const double step = (lhe - target) / deriv;
    x -= step;
    if (std::abs(step) < 1e-14 * (std::abs(x) + 1e-14)) {
      break;
    }
  }
  return negate ? -x : x;
}

namespace {

// Modified Lentz evaluation of the incomplete-beta continued fraction
// (the standard even/odd coefficient pattern).
double beta_cont_fraction(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 3e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) {
    d = kTiny;
  }
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) {
      d = kTiny;
    }
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) {
      c = kTiny;
    }
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) {
      d = kTiny;
    }
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) {
      c = kTiny;
    }
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      return h;
    }
  }
  throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("reg_inc_beta: a and b must be positive");
  }
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw std::domain_error("reg_inc_beta: x must lie in [0, 1]");
  }
  if (x == 0.0) {
    return 0.0;
  }
  if (x == 1.0) {
    return 1.0;
  }
  // The prefactor x^a (1-x)^b / (a·B(a,b)) is symmetric under the
  // (a,b,x) -> (b,a,1-x) reflection up to the leading 1/a vs 1/b.
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                                std::lgamma(b) + a * std::log(x) +
                                b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cont_fraction(x, a, b) / a;
  }
  return 1.0 - front * beta_cont_fraction(1.0 - x, b, a) / b;
}

}  // namespace absim::special
