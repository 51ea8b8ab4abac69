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
// Fast built-in acceptance subset: analytic identities, coding round-trips,
// and small seeded Monte Carlo cross-checks. Runs from a fresh checkout in
// a few seconds with no input files; `backscatter-sim selftest` is the
// command front end.

#ifndef ABSIM_SELFTEST_HPP
#define ABSIM_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace absim::selftest {

struct CheckResult {
  std::string name;    // stable kebab-case identifier, e.g. "erfc-kernel-reference"
  bool passed = false;
  std::string detail;  // one-line metric summary, filled for pass and fail alike
};

// Runs every check unconditionally (no short-circuit on first failure) so a
// broken kernel reports all identities it breaks.
std::vector<CheckResult> run_all();

// Prints one "PASS name  detail" or "FAIL name  detail" line per check plus
// a summary line. Returns 0 if all passed, 3 otherwise (the selftest exit
// code contract).
int run_and_print(std::ostream& os);

}  // namespace absim::selftest

#endif  // ABSIM_SELFTEST_HPP
