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

#include <cmath>
#include <limits>

#include "dmqkd/error.hpp"
#include "dmqkd/sdp.hpp"

namespace dmqkd {

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::NumericalLimit: return "numerical-limit";
  }
  return "unknown";
}

const char* to_string(SdpMode m) {
  return m == SdpMode::InfiniteTruncated ? "infinite-truncated" : "finite-dim";
}

void SdpProblem::validate() const {
  const int n = dim();
  if (n < 1 || C.cols() != n) throw InvalidArgument("SdpProblem: objective must be square");
  auto check = [&](const RMatrix& A, const std::string& what) {
    if (A.rows() != n || A.cols() != n) {
      throw InvalidArgument("SdpProblem: " + what + " has mismatched dimensions");
    }
    if (!A.allFinite()) throw InvalidArgument("SdpProblem: " + what + " has non-finite entries");
    const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff())) {
      throw InvalidArgument("SdpProblem: " + what + " is not symmetric");
    }
  };
  check(C, "objective");
  for (const auto& c : constraints) {
    check(c.A, "constraint '" + c.name + "'");
    if (!std::isfinite(c.rhs)) {
      throw InvalidArgument("SdpProblem: constraint '" + c.name + "' has non-finite rhs");
    }
  }
  if (!(trace_bound > 0.0)) throw InvalidArgument("SdpProblem: trace bound must be positive");
}

DualProblem build_dual(const SdpProblem& p) {
  p.validate();
  DualProblem d;
  const bool min = p.sense == Sense::Minimize;
  d.sense = min ? Sense::Maximize : Sense::Minimize;
  d.F0 = min ? p.C : RMatrix(-p.C);
  d.trace_bound = p.trace_bound;
  for (const auto& c : p.constraints) {
    const bool ge = c.kind == ConstraintKind::GreaterEqual;
    const double a = ge ? -c.rhs : c.rhs;
    d.F.push_back(ge ? RMatrix(-c.A) : c.A);
    d.cost.push_back(min ? -a : a);
    d.nonnegative.push_back(c.kind != ConstraintKind::Equal);
    d.names.push_back(c.name);
  }
  return d;
}

RMatrix DualProblem::lmi(const std::vector<double>& w) const {
  if (static_cast<int>(w.size()) != size()) throw InvalidArgument("DualProblem: wrong multiplier count");
  RMatrix L = F0;
  for (int i = 0; i < size(); ++i) {
    if (w[i] != 0.0) L += w[i] * F[i];
  }
  return L;
}

DualProblem::Evaluation DualProblem::evaluate(std::vector<double> w) const {
  if (static_cast<int>(w.size()) != size()) throw InvalidArgument("DualProblem: wrong multiplier count");
  for (int i = 0; i < size(); ++i) {
    if (nonnegative[i] && w[i] < 0.0) w[i] = 0.0;
  }
  Evaluation ev;
  for (int i = 0; i < size(); ++i) ev.objective += cost[i] * w[i];
  const RMatrix L = lmi(w);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(L, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("DualProblem: eigenvalue solve failed");
  const auto& ev_all = es.eigenvalues();
  const double scale = std::max(std::abs(ev_all[0]), std::abs(ev_all[ev_all.size() - 1]));
  // Allow for the rounding error of the eigensolver itself.
  const double slack = 8.0 * L.rows() * std::numeric_limits<double>::epsilon() * scale;
  ev.lambda_min = ev_all[0];
  const double charge = std::min(0.0, ev.lambda_min - slack) * trace_bound;
  ev.certified = sense == Sense::Maximize ? ev.objective + charge : ev.objective - charge;
  return ev;
}

}  // namespace dmqkd
