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

namespace dmqkd {

struct CovBounds {
  double gammaA = 0.5;
  double gammaB = 0.5;
  double gammaAB = 0.0;
  double nu_plus = 0.5;
  double nu_minus = 0.5;
  double nu_zero = 0.5;
  double fchi = 0.0;
};

struct CutoffBudget {
  double P0 = 0.0;
  int N = 0;
  double delta_prime = 0.0;
  double delta = 0.0;  // Shirokov penalty in bits at the given alphabet
  double floor = 1.0;  // 1 - 2 P0
};

// (x+1) log2(x+1) - x log2 x, with g(0) = 0.
double g_entropy(double x);

// Holevo bound for the symmetric two-mode CM built from the three elements.
double f_chi(double gammaA, double gammaB, double gammaAB);
// Same, returning the intermediate symplectic data.
CovBounds f_chi_detail(double gammaA, double gammaB, double gammaAB);
// Closed-form symplectic spectrum, for cross-checks.
CovBounds f_chi_closed_form(double gammaA, double gammaB, double gammaAB);

// delta' log2 d^2 + 2(1+delta') log2(1+delta') - 2 delta' log2 delta'.
double shirokov_penalty(double delta_prime, int d);

// Cutoff bookkeeping for out-of-range probability P0 and range R; `d` is the
// per-quadrature resolution entering the continuity penalty.
CutoffBudget cutoff_budget(double P0, double R, int d = 16);

}  // namespace dmqkd
