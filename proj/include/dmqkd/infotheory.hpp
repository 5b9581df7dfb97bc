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

#include <vector>

#include <Eigen/Dense>

namespace dmqkd {

// Inputs X with priors, outputs Y over K symbols. Rows of `cond` may sum to
// less than one; the deficit is mass outside the detection window.
struct DiscreteJoint {
  Eigen::MatrixXd cond;  // M x K
  std::vector<double> priors;

  Eigen::VectorXd marginal() const;
  // Append one symbol carrying each row's deficit.
  DiscreteJoint with_deficit_symbol() const;
};

struct MutualInformation {
  double H_Y = 0.0;
  double H_Y_given_X = 0.0;
  double I = 0.0;
};

// Shannon sums in bits over the listed symbols, 0 log 0 = 0, no
// renormalization of the rows.
MutualInformation mutual_information(const DiscreteJoint& dj);

}  // namespace dmqkd
