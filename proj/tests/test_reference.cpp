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

#include "absim/reference.hpp"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "absim/special.hpp"

namespace reference = absim::reference;
namespace special = absim::special;

namespace {

double rel_err(double got, double want) {
  if (want == 0.0) {
    return std::abs(got);
  }
  return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("hypergeometric BER route matches a frozen deep value") {
  // Variance ratio 2 at N = 85 sits deep in the tail; both routes must hit
  // the 50-digit reference rounded to double.
  const double want = 3.943865867253125e-06;
  const double series = reference::ber_manchester_exact_hypergeometric(
      1.0, 2.0, 85);
  const double beta = special::reg_inc_beta(1.0 / 3.0, 85.0, 85.0);
  CHECK(rel_err(series, want) <= 1e-11);
  CHECK(rel_err(beta, want) <= 1e-11);
}

TEST_CASE("hypergeometric BER route agrees with the beta route on a grid") {
  for (int n : {1, 2, 3, 5, 8, 13, 20, 40, 80, 120}) {
    for (double ratio : {1.0, 1.2, 1.5, 2.0, 4.0, 10.0}) {
      CAPTURE(n);
      CAPTURE(ratio);
      const double series =
          reference::ber_manchester_exact_hypergeometric(1.0, ratio, n);
      const double x = 1.0 / (1.0 + ratio);
      const double beta = special::reg_inc_beta(x, n, n);
      CHECK(std::abs(series - beta) <= 1e-10 * std::max(1.0, beta));
      if (beta > 1e-200) {
        CHECK(rel_err(series, beta) <= 1e-9);
      }
    }
  }
}

TEST_CASE("hypergeometric BER route is symmetric in the two variances") {
  for (int n : {1, 5, 20}) {
    CAPTURE(n);
    const double ab = reference::ber_manchester_exact_hypergeometric(
        1.5, 4.0, n);
    const double ba = reference::ber_manchester_exact_hypergeometric(
        4.0, 1.5, n);
    CHECK(ab == ba);
  }
}

TEST_CASE("hypergeometric BER route gives one half at equal variances") {
  for (int n : {1, 7, 50}) {
    CAPTURE(n);
    const double v =
        reference::ber_manchester_exact_hypergeometric(2.0, 2.0, n);
    CHECK(rel_err(v, 0.5) <= 1e-12);
  }
}

TEST_CASE("hypergeometric BER route rejects invalid arguments") {
  CHECK_THROWS_AS(
      (void)reference::ber_manchester_exact_hypergeometric(0.0, 1.0, 5),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)reference::ber_manchester_exact_hypergeometric(1.0, -2.0, 5),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)reference::ber_manchester_exact_hypergeometric(1.0, 2.0, 0),
      std::domain_error);
}

TEST_CASE("erfc_reference matches frozen values and the production kernel") {
  for (const auto& row : reference::kErfcTable) {
    CAPTURE(row.x);
    CHECK(rel_err(reference::erfc_reference(row.x), row.value) <= 1e-12);
  }
  // Dense sweep across the series/continued-fraction switch at x = 2.
  for (double x = 0.0; x <= 10.0; x += 0.121) {
    CAPTURE(x);
    CHECK(rel_err(reference::erfc_reference(x), std::erfc(x)) <= 1e-12);
  }
  for (double x : {-0.5, -2.0}) {
    CAPTURE(x);
    CHECK(rel_err(reference::erfc_reference(x), std::erfc(x)) <= 1e-13);
  }
}
