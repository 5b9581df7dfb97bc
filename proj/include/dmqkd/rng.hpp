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

#include <array>
#include <cstdint>

namespace dmqkd {

// Philox4x32-10 counter-based generator.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

// Stream of uniform and normal draws derived from (seed, stream) with an
// explicit position, so any round can be reproduced without replaying the
// rounds before it.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  // Four 32-bit words for (index, lane).
  Philox4x32::Counter words(std::uint64_t index, std::uint32_t lane) const;

  // Uniform on (0,1) with 52-bit resolution, two per block.
  static double to_unit(std::uint32_t hi, std::uint32_t lo);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

// Box-Muller pair from two uniforms in (0,1).
std::array<double, 2> box_muller(double u1, double u2);

}  // namespace dmqkd
