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
// Numeric kernels shared by the closed-form BER formulas: complementary
// error function (linear and log domain), its inverse, and the regularized
// incomplete beta function.

#ifndef ABSIM_SPECIAL_HPP
#define ABSIM_SPECIAL_HPP

namespace absim::special {

// erfc with relative error below 1e-12 over the full double range. Behind a
// named kernel (rather than raw std::erfc at call sites) so the self-test's
// fault-injection build can corrupt exactly one function.
double erfc_kernel(double x);

// erf through the same kernel boundary.
double erf_kernel(double x);

// log(erfc(x)/2), finite far past the point where erfc underflows linear
// doubles (usable to x ~ 1e7; BER tails below 1e-300 stay representable
// for plotting and argument-domain comparisons).
double log_half_erfc(double x);

// erfc(x)/2 in linear space. When the true value underflows double
// precision the result clamps to 0 and *underflowed (if given) is set.
double half_erfc_clamped(double x, bool* underflowed = nullptr);

// Inverse of erfc on (0, 2); relative error ~1e-12 away from p = 2.
// Throws std::domain_error outside (0, 2).
double erfc_inv(double p);

// Regularized incomplete beta I_x(a, b), absolute error < 1e-12.
// Continued-fraction (modified Lentz) evaluation with the symmetry switch
// to 1 - I_{1-x}(b, a) at x > (a+1)/(a+b+2).
// Throws std::domain_error for x outside [0,1] or nonpositive a, b.
double reg_inc_beta(double x, double a, double b);

}  // namespace absim::special

#endif  // ABSIM_SPECIAL_HPP
