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

#include <iosfwd>
#include <string>
#include <vector>

#include "dmqkd/fock.hpp"
#include "dmqkd/protocol.hpp"

namespace dmqkd {

enum class Sense { Minimize, Maximize };
enum class ConstraintKind { LessEqual, Equal, GreaterEqual };

struct SdpConstraint {
  std::string name;
  RMatrix A;  // real symmetric
  ConstraintKind kind = ConstraintKind::Equal;
  double rhs = 0.0;
};

// optimize <C, X> over real symmetric X >= 0 subject to <A_i, X> (kind) rhs_i.
// Inequalities get nonnegative scalar slacks inside the solver.
struct SdpProblem {
  std::string name;
  Sense sense = Sense::Minimize;
  RMatrix C;
  std::vector<SdpConstraint> constraints;
  // Upper bound on Tr X over the feasible set, used to certify dual bounds.
  double trace_bound = 1.0;
  // True when the matrices are the real embedding of complex Hermitian data.
  bool embedded = false;

  int dim() const { return static_cast<int>(C.rows()); }
  void validate() const;
};

// Lagrange dual in LMI form. With every inequality written as <A_i,X> <= a_i
// (y_i >= 0) and equalities <B_j,X> = b_j (z_j free):
//   min primal:  maximize -sum y a - sum z b   s.t.  C + sum y A + sum z B >= 0
//   max primal:  minimize  sum y a + sum z b   s.t. -C + sum y A + sum z B >= 0
struct DualProblem {
  Sense sense = Sense::Maximize;  // sense of the dual itself
  RMatrix F0;
  std::vector<RMatrix> F;
  std::vector<double> cost;  // objective = sum cost_i w_i
  std::vector<bool> nonnegative;
  std::vector<std::string> names;
  double trace_bound = 1.0;

  struct Evaluation {
    double objective = 0.0;
    double lambda_min = 0.0;
    // Valid bound on the primal optimum after charging the LMI violation
    // against the trace bound (lower bound for a min primal, upper for max).
    double certified = 0.0;
  };
  int size() const { return static_cast<int>(F.size()); }
  RMatrix lmi(const std::vector<double>& w) const;
  Evaluation evaluate(std::vector<double> w) const;
};

DualProblem build_dual(const SdpProblem& p);

enum class SdpStatus { Optimal, Infeasible, NumericalLimit };
const char* to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalLimit;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;  // |primal - dual| / (1 + |primal|)
  double pinf = 0.0;
  double dinf = 0.0;
  // Safe side: upper bound for a max problem, lower bound for a min problem.
  double bound = 0.0;
  int iterations = 0;
  RMatrix X;
  std::vector<double> dual;  // multipliers in the DualProblem convention
  struct Iterate {
    double primal;
    double dual;
    double certified;
  };
  std::vector<Iterate> trace;
};

struct SolverOptions {
  double tol = 1e-9;
  int max_iter = 200;
  bool record_trace = false;
  bool keep_primal = true;
  bool verbose = false;  // per-iteration log on stderr
};

SdpSolution solve(const SdpProblem& p, const SolverOptions& opt = {});

enum class SdpMode { InfiniteTruncated, FiniteDim };
const char* to_string(SdpMode m);

struct SdpParams {
  double v = 0.0;
  double c = 0.0;
  double P0 = 0.0;
  double cnorm = -1.0;  // operator-norm bound of the covariance observable
  // Leave out the detection-window constraint entirely (tests only).
  bool drop_range_constraint = false;
};

// gamma_B program on Bob's mode. In finite-dim mode ops.nmax must be N+1.
SdpProblem build_gammaB_primal(const FockOperatorSet& ops, const SdpParams& prm, SdpMode mode);
// gamma_AB program on the joint space of dimension M * ops.nmax.
SdpProblem build_gammaAB_primal(const FockOperatorSet& ops, const EBRepresentation& ebr,
                                const SdpParams& prm, SdpMode mode);

struct GammaBounds {
  double gammaB_upper = 0.0;
  double gammaAB_lower = 0.0;
};
GammaBounds gamma_bounds(const SdpSolution& solB, const SdpSolution& solAB, double P0,
                         SdpMode mode);

// Plain-text problem files: header lines, then upper-triangle triplets per matrix.
void write_problem(std::ostream& os, const SdpProblem& p);
SdpProblem read_problem(std::istream& is);

}  // namespace dmqkd
