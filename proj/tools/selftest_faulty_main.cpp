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
// Negative-control build: the whole library is recompiled with
// ABSIM_FAULT_INJECT_ERFC, which skews the erfc kernel by one part in 1e6.
// The self-test must notice and exit 3; a harness script asserts that.

#include <iostream>

#include "absim/selftest.hpp"

int main() { return absim::selftest::run_and_print(std::cout); }
