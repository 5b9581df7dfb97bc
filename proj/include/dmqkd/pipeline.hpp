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
#include <string>
#include <utility>

#include "dmqkd/channel.hpp"
#include "dmqkd/finite_size.hpp"
#include "dmqkd/fock.hpp"
#include "dmqkd/protocol.hpp"
#include "dmqkd/sdp.hpp"

namespace dmqkd {

enum class EstimateSource { Expected, MonteCarlo };

// Everything shared by the points of one detector setting.
struct PointContext {
  Constellation con;
  DetectorModel det;
  EBRepresentation ebr;
  SecurityParams security;  // n is taken from the request
  double excess_noise = 0.0;
  int aep_alphabet = 16;
  bool bottom_symbol = false;
  EstimateSource estimates = EstimateSource::Expected;
  std::uint64_t mc_rounds = 0;  // 0: use the block size
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  SolverOptions solver;
};

struct PointRequest {
  double loss_db = 0.0;
  double n = 0.0;  // ignored in asymptotic mode
  RateMode rate_mode = RateMode::Asymptotic;
  SdpMode sdp_mode = SdpMode::InfiniteTruncated;
  int dim = 0;
};

struct PointResult {
  PointRequest req;
  double eta = 0.0;
  double R = 0.0;
  int d = 0;
  double gammaA = 0.0;
  double gammaB = 0.0;
  double gammaAB = 0.0;
  double P0_used = 0.0;
  double sdp_gap_B = 0.0;
  double sdp_gap_AB = 0.0;
  RateResult rate;
  bool numerical_failure = false;
  double runtime_s = 0.0;
};

// Label used in the CSV mode column, e.g. "finite/truncated@99".
std::string mode_label(const PointRequest& r);

SdpParams sdp_params_for(const PointContext& ctx, const PointRequest& req,
                         const ChannelStats& stats, Deltas* deltas_out = nullptr);

ChannelStats point_stats(const PointContext& ctx, const PointRequest& req);

// The two covariance programs for a point, (gamma_B, gamma_AB).
std::pair<SdpProblem, SdpProblem> point_problems(const PointContext& ctx,
                                                 const PointRequest& req,
                                                 const FockOperatorSet& ops);

// Never throws for numerical trouble; failures land in the result status.
PointResult evaluate_point(const PointContext& ctx, const PointRequest& req,
                           const FockOperatorSet& ops);

}  // namespace dmqkd
