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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dmqkd/error.hpp"
#include "dmqkd/gaussian_bound.hpp"

namespace dmqkd {
namespace {

TEST(GEntropy, Values) {
  EXPECT_EQ(g_entropy(0.0), 0.0);
  EXPECT_NEAR(g_entropy(1.0), 2.0, 1e-15);
  EXPECT_NEAR(g_entropy(0.5), 1.5 * std::log2(1.5) + 0.5, 1e-15);
  EXPECT_THROW(g_entropy(-1e-3), InvalidArgument);
  EXPECT_NEAR(g_entropy(1e-300), 0.0, 1e-290);
}

TEST(GEntropy, LargeArgumentAsymptote) {
  for (double x : {10.0, 100.0, 1e4, 1e6}) {
    const double approx = std::log2(std::numbers::e * x);
    EXPECT_LE(std::abs(g_entropy(x) - approx), 1 / (2 * x * std::numbers::ln2)) << x;
  }
}

TEST(GEntropy, Monotone) {
  double prev = 0;
  for (double x = 1e-6; x < 50; x *= 1.3) {
    const double g = g_entropy(x);
    EXPECT_GT(g, prev);
    prev = g;
  }
}

TEST(FChi, VacuumIsZero) {
  EXPECT_NEAR(f_chi(0.5, 0.5, 0.0), 0.0, 1e-9);
  const CovBounds cb = f_chi_detail(0.5, 0.5, 0.0);
  EXPECT_NEAR(cb.nu_plus, 0.5, 1e-12);
  EXPECT_NEAR(cb.nu_minus, 0.5, 1e-12);
  EXPECT_NEAR(cb.nu_zero, 0.5, 1e-12);
}

TEST(FChi, PureFamilyIsZero) {
  for (double a : {0.6, 0.75, 1.3, 2.0, 5.0, 20.0}) {
    const double c = std::sqrt(a * a - 0.25);
    EXPECT_NEAR(f_chi(a, a, c), 0.0, 1e-9) << a;
    EXPECT_NEAR(f_chi_closed_form(a, a, c).fchi, 0.0, 1e-9) << a;
  }
}

TEST(FChi, ExplicitMatchesClosedForm) {
  for (double gA : {0.6, 0.75, 1.2, 3.0}) {
    for (double gB : {0.55, 0.8, 1.25, 2.5}) {
      // Largest gAB with nu_minus >= 1/2.
      const double cmax = std::sqrt((std::max(gA, gB) + 0.5) * (std::min(gA, gB) - 0.5));
      for (double f : {0.0, 0.3, 0.7, 0.95}) {
        const double gAB = f * cmax;
        const CovBounds e = f_chi_detail(gA, gB, gAB);
        const CovBounds c = f_chi_closed_form(gA, gB, gAB);
        EXPECT_NEAR(e.nu_plus, c.nu_plus, 1e-10);
        EXPECT_NEAR(e.nu_minus, c.nu_minus, 1e-10);
        EXPECT_NEAR(e.nu_zero, c.nu_zero, 1e-10);
        EXPECT_NEAR(e.fchi, c.fchi, 1e-9);
        EXPECT_GE(e.fchi, 0.0);
      }
    }
  }
}

TEST(FChi, Monotonicity) {
  EXPECT_LT(f_chi(0.75, 1.25, 0.20), f_chi(0.75, 1.30, 0.20));
  EXPECT_LT(f_chi(0.75, 1.25, 0.25), f_chi(0.75, 1.25, 0.20));
  EXPECT_LT(f_chi(0.75, 1.25, 0.20), f_chi(0.80, 1.25, 0.20));
}

// Thermal-loss channel acting on half of a two-mode squeezed vacuum; the
// Holevo quantity has the textbook form g((l1-1)/2)+g((l2-1)/2)-g((l3-1)/2)
// in shot-noise units.
TEST(FChi, LossyEprExample) {
  const double V = 1.5 * 2;  // SNU variance of each mode
  const double T = 0.6, W = 1.0;
  const double a = V, b = T * V + (1 - T) * W, c = std::sqrt(T * (V * V - 1));
  const double A = a * a + b * b - 2 * c * c;
  const double B = a * b - c * c;
  const double l1 = std::sqrt(0.5 * (A + std::sqrt(A * A - 4 * B * B)));
  const double l2 = std::sqrt(0.5 * (A - std::sqrt(A * A - 4 * B * B)));
  const double l3 = a - c * c / (b + 1);
  auto G = [](double l) { return g_entropy((l - 1) / 2); };
  const double expect = G(l1) + G(l2) - G(l3);
  EXPECT_NEAR(f_chi(a / 2, b / 2, c / 2), expect, 1e-10);
}

TEST(FChi, RejectsUnphysical) {
  EXPECT_THROW(f_chi(0.4, 0.5, 0.0), NumericalError);
  EXPECT_THROW(f_chi(0.6, 0.6, 0.5), NumericalError);
  EXPECT_THROW(f_chi(std::nan(""), 0.6, 0.1), NumericalError);
  // Within the guard band.
  EXPECT_NO_THROW(f_chi(0.5 - 1e-10, 0.5, 0.0));
}

TEST(Shirokov, Values) {
  EXPECT_EQ(shirokov_penalty(0.0, 16), 0.0);
  EXPECT_NEAR(shirokov_penalty(0.01, 16), 0.2419, 5e-4);
  EXPECT_NEAR(shirokov_penalty(0.01, 32) - shirokov_penalty(0.01, 16), 0.02, 1e-14);
  EXPECT_THROW(shirokov_penalty(2.1, 16), InvalidArgument);
  EXPECT_THROW(shirokov_penalty(-0.1, 16), InvalidArgument);
}

TEST(Shirokov, MonotoneOnUnitInterval) {
  double prev = 0;
  for (double dp = 1e-8; dp <= 1.0; dp *= 1.5) {
    const double s = shirokov_penalty(dp, 16);
    EXPECT_GT(s, prev);
    prev = s;
  }
}

TEST(CutoffBudget, Examples) {
  const CutoffBudget z = cutoff_budget(0.0, 7.0);
  EXPECT_EQ(z.delta_prime, 0.0);
  EXPECT_EQ(z.delta, 0.0);
  EXPECT_EQ(z.floor, 1.0);
  EXPECT_EQ(z.N, 98);
  const CutoffBudget s = cutoff_budget(1e-11, 7.0);
  EXPECT_NEAR(s.delta_prime, 8.94e-6, 1e-8);
  EXPECT_GT(s.delta, 0.0);
  EXPECT_EQ(cutoff_budget(0.0, 2.5).N, 12);
  EXPECT_THROW(cutoff_budget(0.25, 7.0), InvalidArgument);
  EXPECT_THROW(cutoff_budget(-1e-3, 7.0), InvalidArgument);
  EXPECT_THROW(cutoff_budget(0.1, 0.0), InvalidArgument);
}

}  // namespace
}  // namespace dmqkd
