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
#include <vector>

#include "dmqkd/fock.hpp"

namespace dmqkd {

struct Constellation {
  std::vector<cplx> amplitudes;
  std::vector<double> probs;

  Constellation() = default;
  Constellation(std::vector<cplx> amps, std::vector<double> p);

  int M() const { return static_cast<int>(amplitudes.size()); }
  // max_x (|Re a_x| + |Im a_x|) / sqrt 2
  double A() const;
  // Bound on the operator norm of the covariance observable for range R.
  double cnorm_bound(double R) const;
  double mean_photon_number() const;
  // alpha_x = alpha i^x with equal weights.
  bool is_qpsk(double tol = 1e-14) const;
};

Constellation make_qpsk(double amp, double phase);
// QPSK with alpha = amp e^{i pi/4}.
Constellation make_qpsk(double amp);

// Everything the SDPs need from Alice's purification. Matrices named without
// suffix are in the psi_x basis; the *_w variants are in a working basis
// (columns of `basis` give its vectors in psi_x coordinates) chosen so that,
// combined with Bob's Fock-phase rotation `bob_phase`, the QPSK operators come
// out real.
struct EBRepresentation {
  std::vector<double> lambdas;
  CMatrix sigma;
  CMatrix Aop;    // <psi_x| a |psi_x'>
  CMatrix Amult;  // sum_x alpha_x |psi_x><psi_x|
  double gammaA = 0.0;

  CMatrix basis;
  CMatrix sigma_w;
  CMatrix Aop_w;
  CMatrix Amult_w;
  double bob_phase = 0.0;
};

std::array<double, 4> qpsk_lambdas(double amp);

CMatrix sigma_matrix(const Constellation& con);

// <psi_x|a|psi_x'> for the QPSK purification with base amplitude alpha.
CMatrix a_matrix(cplx alpha);
CMatrix a_matrix(double amp);

// Closed-form QPSK path when the constellation is QPSK, numeric otherwise.
EBRepresentation eb_representation(const Constellation& con);
// Always take the numeric path (diagonalizing the Gram matrix of the states).
EBRepresentation eb_representation_numeric(const Constellation& con);

}  // namespace dmqkd
