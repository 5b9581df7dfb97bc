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
#include <algorithm>
#include <complex>
#include <string>

#include "dmqkd/error.hpp"
#include "dmqkd/sdp.hpp"

namespace dmqkd {
namespace {

constexpr double kImagTol = 1e-12;

// X_{nm} -> e^{i theta (m-n)} X_{nm}, i.e. D X D^dag with D = diag(e^{-i theta n}).
CMatrix rotate_fock(const CMatrix& X, double theta) {
  if (theta == 0.0) return X;
  CMatrix out(X.rows(), X.cols());
  for (Eigen::Index n = 0; n < X.rows(); ++n) {
    for (Eigen::Index m = 0; m < X.cols(); ++m) {
      out(n, m) = X(n, m) * std::polar(1.0, theta * double(m - n));
    }
  }
  return out;
}

CMatrix kron(const CMatrix& A, const CMatrix& B) {
  CMatrix out = CMatrix::Zero(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) != cplx(0.0)) {
        out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
      }
    }
  }
  return out;
}

CMatrix hermitian_part(const CMatrix& A) { return 0.5 * (A + A.adjoint()); }

RMatrix embed(const CMatrix& H) {
  const Eigen::Index n = H.rows();
  RMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = H.real();
  out.topRightCorner(n, n) = -H.imag();
  out.bottomLeftCorner(n, n) = H.imag();
  out.bottomRightCorner(n, n) = H.real();
  return 0.5 * out;
}

struct ComplexConstraint {
  std::string name;
  CMatrix A;
  ConstraintKind kind;
  double rhs;
};

// Stores the program with real matrices when every matrix is real to within
// the residue tolerance, otherwise through the real embedding.
SdpProblem realify(std::string name, Sense sense, const CMatrix& C,
                   std::vector<ComplexConstraint> cons) {
  // A purely imaginary Hermitian matrix has zero trace against every real
  // symmetric X, so such constraints with a zero target hold automatically in
  // the real restriction.
  auto imag_only = [](const ComplexConstraint& c) {
    const double re = c.A.real().cwiseAbs().maxCoeff();
    const double im = c.A.imag().cwiseAbs().maxCoeff();
    return re < kImagTol * std::max(1.0, im) && std::abs(c.rhs) < kImagTol;
  };
  double resid = C.imag().cwiseAbs().maxCoeff() / std::max(1.0, C.cwiseAbs().maxCoeff());
  for (const auto& c : cons) {
    if (imag_only(c)) continue;
    resid = std::max(resid, c.A.imag().cwiseAbs().maxCoeff() /
                                std::max(1.0, c.A.cwiseAbs().maxCoeff()));
  }
  const bool real = resid < kImagTol;
  if (real) {
    std::erase_if(cons, imag_only);
  }
  SdpProblem p;
  p.name = std::move(name);
  p.sense = sense;
  p.embedded = !real;
  p.trace_bound = real ? 1.0 : 2.0;
  auto conv = [&](const CMatrix& A) -> RMatrix {
    const CMatrix H = hermitian_part(A);
    if (real) {
      RMatrix R = H.real();
      return 0.5 * (R + R.transpose());
    }
    return embed(H);
  };
  p.C = conv(C);
  for (auto& c : cons) {
    RMatrix A = conv(c.A);
    if (A.cwiseAbs().maxCoeff() == 0.0) {
      if (std::abs(c.rhs) > kImagTol) {
        throw NumericalError("constraint '" + c.name + "' vanishes but its target is " +
                             std::to_string(c.rhs));
      }
      continue;
    }
    p.constraints.push_back({c.name, std::move(A), c.kind, c.rhs});
  }
  p.validate();
  return p;
}

void check_P0(double P0) {
  if (!(P0 >= 0.0)) throw InvalidArgument("SDP builder: P0 must be non-negative");
  if (P0 >= 0.25) throw InvalidArgument("SDP builder: P0 >= 1/4, normalization degenerates");
}

}  // namespace

SdpProblem build_gammaB_primal(const FockOperatorSet& ops, const SdpParams& prm,
                               SdpMode mode) {
  check_P0(prm.P0);
  const int dim = ops.nmax;
  if (mode == SdpMode::FiniteDim && dim != ops.N + 1) {
    throw InvalidArgument("finite-dim program needs operators at dimension N+1");
  }
  if (dim < ops.N + 1) throw InvalidArgument("program dimension below N+1");
  const double norm = mode == SdpMode::FiniteDim ? 1.0 - 2.0 * prm.P0 : 1.0;
  const CMatrix C = ops.num_objective.cast<cplx>().asDiagonal();
  std::vector<ComplexConstraint> cons;
  if (std::isfinite(prm.v)) cons.push_back({"V", ops.V, ConstraintKind::LessEqual, prm.v / norm});
  if (!prm.drop_range_constraint) {
    cons.push_back({"I-U", ops.IminusU, ConstraintKind::LessEqual, prm.P0 / norm});
  }
  cons.push_back({"trace", CMatrix::Identity(dim, dim), ConstraintKind::Equal, 1.0});
  return realify(mode == SdpMode::FiniteDim ? "gammaB-finite" : "gammaB-truncated",
                 Sense::Maximize, C, std::move(cons));
}

SdpProblem build_gammaAB_primal(const FockOperatorSet& ops, const EBRepresentation& ebr,
                                const SdpParams& prm, SdpMode mode) {
  check_P0(prm.P0);
  const int dim = ops.nmax;
  const int M = static_cast<int>(ebr.sigma_w.rows());
  if (M < 1 || ebr.Aop_w.rows() != M || ebr.Amult_w.rows() != M) {
    throw InvalidArgument("SDP builder: EB matrices have inconsistent dimensions");
  }
  if (mode == SdpMode::FiniteDim && dim != ops.N + 1) {
    throw InvalidArgument("finite-dim program needs operators at dimension N+1");
  }
  if (dim < ops.N + 1) throw InvalidArgument("program dimension below N+1");
  double v = prm.v, c = prm.c, P0 = prm.P0;
  if (mode == SdpMode::FiniteDim) {
    if (!(prm.cnorm >= 0.0)) {
      throw InvalidArgument("finite-dim program needs a bound on the covariance operator norm");
    }
    const double norm = 1.0 - 2.0 * prm.P0;
    v /= norm;
    P0 /= norm;
    c -= 2.0 * std::sqrt(2.0 * prm.P0) * prm.cnorm;
  }
  const double theta = ebr.bob_phase;
  const CMatrix Bp = rotate_fock(ops.Bop, theta);
  const CMatrix Vp = rotate_fock(ops.V, theta);
  const CMatrix IUp = rotate_fock(ops.IminusU, theta);
  const CMatrix IA = CMatrix::Identity(M, M);
  const CMatrix IB = CMatrix::Identity(dim, dim);

  const CMatrix obj = covariance_objective(std::polar(1.0, theta) * ebr.Aop_w, ops.N, dim);
  const CMatrix Cop = 0.5 * (kron(ebr.Amult_w.adjoint(), Bp) + kron(ebr.Amult_w, Bp.adjoint()));

  std::vector<ComplexConstraint> cons;
  if (std::isfinite(v)) cons.push_back({"IxV", kron(IA, Vp), ConstraintKind::LessEqual, v});
  if (std::isfinite(c)) cons.push_back({"C", Cop, ConstraintKind::GreaterEqual, c});
  if (!prm.drop_range_constraint) {
    cons.push_back({"IxI-U", kron(IA, IUp), ConstraintKind::LessEqual, P0});
  }
  const cplx I(0.0, 1.0);
  for (int h = 0; h < M; ++h) {
    for (int k = 0; k < M; ++k) {
      CMatrix E = CMatrix::Zero(M, M);
      double rhs;
      std::string name;
      if (h >= k) {
        E(k, h) += 0.5;
        E(h, k) += 0.5;
        rhs = ebr.sigma_w(h, k).real();
        name = "E" + std::to_string(h) + std::to_string(k);
      } else {
        // F_{k,h} = i (|h><k| - |k><h|) / 2
        E(h, k) += 0.5 * I;
        E(k, h) -= 0.5 * I;
        rhs = ebr.sigma_w(h, k).imag();
        name = "F" + std::to_string(h) + std::to_string(k);
      }
      cons.push_back({name, kron(E, IB), ConstraintKind::Equal, rhs});
    }
  }
  // The diagonal marginal constraints already fix the trace.
  return realify(mode == SdpMode::FiniteDim ? "gammaAB-finite" : "gammaAB-truncated",
                 Sense::Minimize, obj, std::move(cons));
}

GammaBounds gamma_bounds(const SdpSolution& solB, const SdpSolution& solAB, double P0,
                         SdpMode mode) {
  check_P0(P0);
  if (solB.status == SdpStatus::Infeasible || solAB.status == SdpStatus::Infeasible) {
    throw NumericalError("gamma_bounds: a covariance program was reported infeasible");
  }
  GammaBounds g;
  g.gammaB_upper = mode == SdpMode::InfiniteTruncated ? solB.bound / (1.0 - 2.0 * P0)
                                                      : solB.bound;
  g.gammaAB_lower = solAB.bound;
  return g;
}

}  // namespace dmqkd
