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

#include "dmqkd/rng.hpp"

namespace dmqkd {
namespace {

// Known-answer vectors from the Random123 distribution.
TEST(Philox, KnownAnswers) {
  using C = Philox4x32::Counter;
  const C z = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(z, (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  const C f = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(f, (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  const C p = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(p, (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, Deterministic) {
  const CounterRng a(42, 7), b(42, 7), c(43, 7), d(42, 8);
  EXPECT_EQ(a.words(123456789, 2), b.words(123456789, 2));
  EXPECT_NE(a.words(5, 0), c.words(5, 0));
  EXPECT_NE(a.words(5, 0), d.words(5, 0));
  EXPECT_NE(a.words(5, 0), a.words(5, 1));
  EXPECT_NE(a.words(5, 0), a.words(6, 0));
  // The upper stream bits reach the key.
  const CounterRng hi(42, 7ull | (1ull << 40));
  EXPECT_NE(a.words(5, 0), hi.words(5, 0));
}

TEST(CounterRng, UnitRange) {
  EXPECT_GT(CounterRng::to_unit(0, 0), 0.0);
  EXPECT_LT(CounterRng::to_unit(0xffffffffu, 0xffffffffu), 1.0);
}

TEST(CounterRng, UniformMoments) {
  const CounterRng r(1, 0);
  const int n = 400000;
  double s = 0, s2 = 0;
  int hist[10] = {};
  for (int i = 0; i < n / 2; ++i) {
    const auto w = r.words(i, 0);
    for (double u : {CounterRng::to_unit(w[0], w[1]), CounterRng::to_unit(w[2], w[3])}) {
      s += u;
      s2 += u * u;
      ++hist[static_cast<int>(u * 10)];
    }
  }
  EXPECT_NEAR(s / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(s2 / n, 1.0 / 3, 5 * std::sqrt(4.0 / 45 / n));
  double chi2 = 0;
  for (int k = 0; k < 10; ++k) chi2 += std::pow(hist[k] - n / 10.0, 2) / (n / 10.0);
  // 9 degrees of freedom, p = 1e-3 critical value.
  EXPECT_LT(chi2, 27.88);
}

TEST(BoxMuller, NormalMoments) {
  const CounterRng r(9, 3);
  const int n = 400000;
  double s = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < n / 2; ++i) {
    const auto w = r.words(i, 0);
    const auto g = box_muller(CounterRng::to_unit(w[0], w[1]), CounterRng::to_unit(w[2], w[3]));
    for (double z : g) {
      s += z;
      s2 += z * z;
      s4 += z * z * z * z;
    }
  }
  EXPECT_NEAR(s / n, 0.0, 5 * std::sqrt(1.0 / n));
  EXPECT_NEAR(s2 / n, 1.0, 5 * std::sqrt(2.0 / n));
  EXPECT_NEAR(s4 / n, 3.0, 5 * std::sqrt(96.0 / n));
}

}  // namespace
}  // namespace dmqkd
