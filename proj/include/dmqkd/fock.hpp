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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dmqkd {

struct EBRepresentation;

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Square detection window [-R,R]^2 cut into d x d equal bins. Bin indices are
// 1-based throughout the public interface.
struct DetectorModel {
  double R = 0.0;
  int d = 0;
  std::vector<double> bin_edges;    // d+1 ascending values
  std::vector<double> bin_centers;  // d midpoints

  DetectorModel() = default;
  DetectorModel(double range, int bins);

  double width() const { return 2.0 * R / d; }
  double lo(int j) const { return bin_edges.at(j - 1); }
  double hi(int j) const { return bin_edges.at(j); }
  double center(int j) const { return bin_centers.at(j - 1); }
  cplx beta_center(int j, int k) const;
  // Photon-number cutoff floor(2R^2).
  int cutoff() const;
  // Bin index of a quadrature value, 0 when |t| > R. Ties go to the lower bin.
  int digitize(double t) const;
};

struct FockOperatorSet {
  int nmax = 0;
  int N = 0;
  CMatrix U;
  CMatrix V;
  CMatrix Bop;
  // I - U, assembled from the tails directly so that tiny leakage survives.
  CMatrix IminusU;
  RVector num_objective;  // diagonal of the projected number objective
  RVector W_diag;
  RVector VR_diag;
  CMatrix cov_objective;  // on the (alice_dim * nmax) joint space
};

// <n|beta> for n = 0..nmax-1.
CVector coherent_amplitudes(cplx beta, int nmax);

// Matrix of the bin POVM element truncated to nmax.
CMatrix bin_projector(int j, int k, const DetectorModel& det, int nmax);

// U, V, IminusU, B operators plus the diagonal pieces that need no EB data.
FockOperatorSet build_detector_operators(const DetectorModel& det, int nmax);

struct TailOperators {
  RVector W_diag;
  RVector VR_diag;
};
TailOperators tail_operators(double R, int nmax);

// Diagonal of 1/2 Pi (b^dag b + b b^dag) Pi.
RVector number_objective(int N, int nmax);

// Truncated lowering operator, optionally restricted to n <= N on both sides.
RMatrix lowering_operator(int nmax, int N);

// 1/2 (a (x) PbP + a^dag (x) Pb^dagP) with `a_op` given in Alice's basis.
CMatrix covariance_objective(const CMatrix& a_op, int N, int nmax);

struct ObjectiveMatrices {
  RVector num_objective;
  CMatrix cov_objective;
};
// Both SDP objectives, the covariance one in the psi_x (x) Fock basis.
ObjectiveMatrices build_objectives(const EBRepresentation& ebr,
                                   const DetectorModel& det, int nmax);

// Hermitian kernel  X_{nn'} = \int dq dp/(2 pi) f(q) g(p) e^{-|beta|^2}
//   beta^n conj(beta)^{n'} / sqrt(n! n'!)
// from scaled moments fq[e] = \int (q/s)^e f(q) e^{-q^2/2} dq and likewise gp.
CMatrix moment_kernel(const std::vector<double>& fq,
                      const std::vector<double>& gp, double scale, int nmax);

// Scale used for the moment vectors at a given cutoff.
double moment_scale(double R, int nmax);

}  // namespace dmqkd
