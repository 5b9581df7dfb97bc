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
#include <vector>

#include "dmqkd/fock.hpp"
#include "dmqkd/infotheory.hpp"
#include "dmqkd/protocol.hpp"

namespace dmqkd {

struct ChannelModel {
  double eta = 1.0;  // transmissivity
  double u = 0.0;    // excess-noise variance

  ChannelModel() = default;
  ChannelModel(double transmissivity, double excess_noise);
  static ChannelModel from_loss_db(double loss_db, double excess_noise);
};

enum class Axis { Q, P };

struct ChannelStats {
  double v = 0.0;
  double c = 0.0;
  double P0 = 0.0;
  // M x d^2, column index (j-1)*d + (k-1).
  Eigen::MatrixXd bin_probs;
  std::uint64_t n_samples = 0;
  double v_hat = 0.0;
  double c_hat = 0.0;
  double P0_hat = 0.0;
};

// P_{j|x} along one axis (q uses Re alpha_x, p uses Im alpha_x).
double bin_prob_1d(int j, int x, const ChannelModel& ch, const DetectorModel& det,
                   const Constellation& con, Axis axis = Axis::Q);
// Probability that the given axis lands outside [-R,R].
double out_of_range_1d(int x, const ChannelModel& ch, const DetectorModel& det,
                       const Constellation& con, Axis axis);

ChannelStats expected_stats(const ChannelModel& ch, const DetectorModel& det,
                            const Constellation& con);

DiscreteJoint discrete_joint(const ChannelModel& ch, const DetectorModel& det,
                             const Constellation& con);

// How rounds falling outside the window enter v-hat and c-hat.
enum class OutOfRangePolicy {
  ZeroContribution,  // counted in n, contribute nothing
  DropRound,         // excluded from the v-hat and c-hat averages
};

struct Record {
  std::uint32_t x = 0;
  std::uint16_t j = 0;  // 0 when out of range
  std::uint16_t k = 0;
  std::uint8_t S = 0;
};

struct SampleOptions {
  OutOfRangePolicy policy = OutOfRangePolicy::ZeroContribution;
  bool keep_records = true;
  std::uint64_t stream = 0;
  int threads = 1;
};

struct SampleResult {
  ChannelStats stats;  // analytic fields plus the estimates
  std::vector<Record> records;
  // M x (d^2 + 1) counts; the last column counts out-of-range rounds.
  Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
};

// i.i.d. rounds: x ~ P_x, (q,p) Gaussian with means sqrt(eta)(q_x,p_x) and
// per-axis variance u+1, then digitized.
SampleResult sample_records(std::uint64_t n, std::uint64_t seed, const ChannelModel& ch,
                            const DetectorModel& det, const Constellation& con,
                            const SampleOptions& opt = {});

void write_records_csv(std::ostream& os, const std::vector<Record>& records);

// Draws digitized outcomes (x, bin or out-of-range) straight from the analytic
// joint law with an alias table. Same distribution as sample_records, much
// cheaper per round; used for repeated-trial coverage studies.
class DigitizedSampler {
 public:
  DigitizedSampler(const ChannelModel& ch, const DetectorModel& det, const Constellation& con);

  struct Estimates {
    double v_hat;
    double c_hat;
    double P0_hat;
  };
  // One block of n rounds from substream `trial`.
  Estimates block(std::uint64_t n, std::uint64_t seed, std::uint64_t trial) const;

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
  std::vector<double> vval_, cval_;
  std::vector<std::uint8_t> out_;
};

}  // namespace dmqkd
