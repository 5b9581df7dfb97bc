// Copyright 2026 The dmqkd Authors
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

#pragma once

// One-dimensional Gaussian moment integrals, the building block for every
// phase-space bin integral in the Fock-basis operator assembly.

#include <vector>

namespace dmqkd {

// ∫_{lo}^{hi} t^a e^{-t²/2} dt. Either bound may be ±infinity.
double gauss_moment(int a, double lo, double hi);

// Natural log of |∫_{lo}^{hi} t^a e^{-t²/2} dt| for 0 <= lo <= hi <= inf;
// -inf when the interval is empty.
double log_gauss_moment_positive(int a, double lo, double hi);

// Moments M̃_a = ∫_{lo}^{hi} (t/scale)^a e^{-t²/2} dt for a = 0..max_order.
// The scale keeps high orders inside double range.
std::vector<double> scaled_gauss_moments(int max_order, double lo, double hi,
                                         double scale);

// Same, over |t| > bound.
std::vector<double> scaled_gauss_tail_moments(int max_order, double bound,
                                              double scale);

// Regularized upper incomplete gamma Q(s, x).
double gamma_q(double s, double x);

double log_factorial(int n);

}  // namespace dmqkd
