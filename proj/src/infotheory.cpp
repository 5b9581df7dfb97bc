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

#include "dmqkd/infotheory.hpp"

#include <algorithm>
#include <cmath>

#include "dmqkd/error.hpp"

namespace dmqkd {
namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

void validate(const DiscreteJoint& dj) {
  if (dj.cond.rows() != static_cast<Eigen::Index>(dj.priors.size()) || dj.priors.empty()) {
    throw InvalidArgument("DiscreteJoint: prior count must match conditional rows");
  }
  for (double p : dj.priors) {
    if (!(p >= 0.0)) throw InvalidArgument("DiscreteJoint: negative prior");
  }
  for (Eigen::Index x = 0; x < dj.cond.rows(); ++x) {
    for (Eigen::Index y = 0; y < dj.cond.cols(); ++y) {
      if (!(dj.cond(x, y) >= 0.0)) throw InvalidArgument("DiscreteJoint: negative mass");
    }
    if (dj.cond.row(x).sum() > 1.0 + 1e-12) {
      throw InvalidArgument("DiscreteJoint: conditional row exceeds unit mass");
    }
  }
}

}  // namespace

Eigen::VectorXd DiscreteJoint::marginal() const {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(cond.cols());
  for (Eigen::Index x = 0; x < cond.rows(); ++x) m += priors[x] * cond.row(x).transpose();
  return m;
}

DiscreteJoint DiscreteJoint::with_deficit_symbol() const {
  DiscreteJoint out;
  out.priors = priors;
  out.cond.resize(cond.rows(), cond.cols() + 1);
  out.cond.leftCols(cond.cols()) = cond;
  for (Eigen::Index x = 0; x < cond.rows(); ++x) {
    out.cond(x, cond.cols()) = std::max(0.0, 1.0 - cond.row(x).sum());
  }
  return out;
}

MutualInformation mutual_information(const DiscreteJoint& dj) {
  validate(dj);
  MutualInformation mi;
  const Eigen::VectorXd m = dj.marginal();
  for (Eigen::Index y = 0; y < m.size(); ++y) mi.H_Y -= plogp(m[y]);
  for (Eigen::Index x = 0; x < dj.cond.rows(); ++x) {
    double h = 0.0;
    for (Eigen::Index y = 0; y < dj.cond.cols(); ++y) h -= plogp(dj.cond(x, y));
    mi.H_Y_given_X += dj.priors[x] * h;
  }
  mi.I = mi.H_Y - mi.H_Y_given_X;
  return mi;
}

}  // namespace dmqkd
