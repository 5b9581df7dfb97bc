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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dmqkd/finite_size.hpp"
#include "dmqkd/pipeline.hpp"

namespace dmqkd {

// Flat "section.key = value" text; '#' starts a comment, lists are
// comma-separated. Unknown keys are errors.
struct RunConfig {
  double amplitude = 0.5;
  int M = 4;
  std::vector<double> phases;  // empty: pi/4 + 2 pi x / M

  std::vector<double> ranges{7.0};
  int bins = 16;

  std::vector<double> loss_db;
  double excess_noise = 0.001;

  std::vector<double> n_list{1e10};
  SecurityParams security;
  int aep_alphabet = 0;  // 0: the bin count

  std::vector<RateMode> rate_modes{RateMode::Asymptotic};
  bool truncated = true;
  bool finite_dim = false;
  std::vector<int> dims;  // 0 means floor(2R^2)+1

  bool bottom_symbol = false;
  EstimateSource estimates = EstimateSource::Expected;
  std::uint64_t mc_rounds = 0;

  std::uint64_t seed = 1;
  int threads = 1;
  double tol = 1e-9;
  std::string output;

  Constellation constellation() const;
  void validate() const;
};

RunConfig parse_config(std::istream& is);
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace dmqkd
