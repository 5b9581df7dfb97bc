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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "dmqkd/error.hpp"
#include "dmqkd/protocol.hpp"

namespace dmqkd {
namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Closed forms for the mod-4 Poisson sums.
double lambda_closed(int y, double t) {
  const double e = std::exp(-t);
  switch (y) {
    case 0: return 0.5 * e * (std::cosh(t) + std::cos(t));
    case 1: return 0.5 * e * (std::sinh(t) + std::sin(t));
    case 2: return 0.5 * e * (std::cosh(t) - std::cos(t));
    default: return 0.5 * e * (std::sinh(t) - std::sin(t));
  }
}

TEST(Lambdas, ExampleValues) {
  const auto lam = qpsk_lambdas(0.5);
  EXPECT_NEAR(lam[0], 0.778928, 5e-7);
  EXPECT_NEAR(lam[3], 2.03e-3, 5e-6);
  EXPECT_NEAR(lam[0] + lam[1] + lam[2] + lam[3], 1.0, 1e-15);
}

TEST(Lambdas, MatchClosedForms) {
  for (double amp : {0.05, 0.3, 0.5, 1.0, 2.0, 4.0}) {
    const auto lam = qpsk_lambdas(amp);
    for (int y = 0; y < 4; ++y) {
      EXPECT_NEAR(lam[y] / lambda_closed(y, amp * amp), 1.0, 1e-10) << amp << " " << y;
    }
  }
}

TEST(Lambdas, RejectsBadAmplitude) {
  EXPECT_THROW(qpsk_lambdas(0.0), InvalidArgument);
  EXPECT_THROW(qpsk_lambdas(-1.0), InvalidArgument);
  EXPECT_THROW(qpsk_lambdas(std::nan("")), InvalidArgument);
}

TEST(Sigma, SpectrumIsLambdas) {
  for (double amp : {0.2, 0.5, 1.5}) {
    const Constellation con = make_qpsk(amp);
    const CMatrix s = sigma_matrix(con);
    EXPECT_LT(max_abs(s - s.adjoint()), 1e-15);
    EXPECT_NEAR(s.trace().real(), 1.0, 1e-15);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
    auto ev = es.eigenvalues();
    auto lam = qpsk_lambdas(amp);
    std::sort(lam.begin(), lam.end());
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(ev[k], lam[k], 1e-12);
  }
}

TEST(Constellation, Validation) {
  EXPECT_THROW(Constellation({}, {}), InvalidArgument);
  EXPECT_THROW(Constellation({cplx(1, 0)}, {0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(Constellation({cplx(1, 0), cplx(-1, 0)}, {0.7, 0.7}), InvalidArgument);
  EXPECT_THROW(Constellation({cplx(1, 0), cplx(-1, 0)}, {1.5, -0.5}), InvalidArgument);
  EXPECT_THROW(make_qpsk(0.0), InvalidArgument);
}

TEST(Constellation, QpskQuantities) {
  const Constellation con = make_qpsk(0.5);
  EXPECT_TRUE(con.is_qpsk());
  EXPECT_NEAR(con.A(), 0.5, 1e-15);
  EXPECT_NEAR(con.cnorm_bound(7.0), 3.5, 1e-14);
  EXPECT_NEAR(con.mean_photon_number(), 0.25, 1e-15);
  // A depends on the orientation: an axis-aligned QPSK has A = |alpha| / sqrt 2.
  const Constellation axis = make_qpsk(0.5, 0.0);
  EXPECT_NEAR(axis.A(), 0.5 / std::numbers::sqrt2, 1e-15);
  const Constellation bpsk({cplx(0.5, 0), cplx(-0.5, 0)}, {0.5, 0.5});
  EXPECT_FALSE(bpsk.is_qpsk());
}

TEST(AMatrix, GuardsSmallAmplitude) {
  EXPECT_THROW(a_matrix(5e-4), InvalidArgument);
  EXPECT_NO_THROW(a_matrix(1e-3));
}

TEST(AMatrix, PhaseCovariance) {
  const double amp = 0.7;
  const CMatrix a0 = a_matrix(cplx(amp, 0.0));
  for (double th : {0.3, std::numbers::pi / 4, 2.0}) {
    const CMatrix at = a_matrix(std::polar(amp, th));
    EXPECT_LT(max_abs(at - std::exp(cplx(0, -th)) * a0), 1e-13) << th;
  }
}

TEST(EB, GammaA) {
  const EBRepresentation eb = eb_representation(make_qpsk(0.5));
  EXPECT_NEAR(eb.gammaA, 0.75, 1e-15);
  // <a^dag a> on Alice's mode from the representation itself.
  const cplx n = (eb.sigma_w * eb.Aop_w.adjoint() * eb.Aop_w).trace();
  EXPECT_NEAR(n.real(), 0.25, 1e-13);
  EXPECT_NEAR(n.imag(), 0.0, 1e-15);
}

TEST(EB, ClosedFormMatchesNumeric) {
  for (double amp : {0.3, 0.5, 1.2}) {
    const Constellation con = make_qpsk(amp);
    const EBRepresentation c = eb_representation(con);
    const EBRepresentation n = eb_representation_numeric(con);
    EXPECT_LT(max_abs(c.sigma - n.sigma), 1e-12) << amp;
    EXPECT_LT(max_abs(c.Aop - n.Aop), 1e-11) << amp;
    EXPECT_LT(max_abs(c.Amult - n.Amult), 1e-15) << amp;
    EXPECT_NEAR(c.gammaA, n.gammaA, 1e-15);
    // Working bases are orthonormal and diagonalize sigma.
    for (const auto* eb : {&c, &n}) {
      const CMatrix I = CMatrix::Identity(4, 4);
      EXPECT_LT(max_abs(eb->basis.adjoint() * eb->basis - I), 1e-12);
      EXPECT_LT(max_abs(eb->basis.adjoint() * eb->sigma * eb->basis - eb->sigma_w), 1e-12);
      EXPECT_LT(max_abs(eb->basis.adjoint() * eb->Aop * eb->basis - eb->Aop_w), 1e-11);
    }
  }
}

TEST(EB, ClosedFormWorkingBasisIsReal) {
  const EBRepresentation eb = eb_representation(make_qpsk(0.5));
  const cplx ph = std::exp(cplx(0, eb.bob_phase));
  EXPECT_LT((ph * eb.Aop_w).imag().cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((std::conj(ph) * eb.Amult_w).imag().cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(eb.sigma_w.imag().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EB, NumericHandlesEightPsk) {
  std::vector<cplx> amps;
  for (int k = 0; k < 8; ++k) amps.push_back(std::polar(0.6, k * std::numbers::pi / 4));
  const Constellation con(amps, std::vector<double>(8, 0.125));
  const EBRepresentation eb = eb_representation(con);
  double s = 0;
  for (double l : eb.lambdas) {
    EXPECT_GT(l, 0.0);
    s += l;
  }
  EXPECT_NEAR(s, 1.0, 1e-12);
  EXPECT_LT(max_abs(eb.sigma - sigma_matrix(con)), 1e-12);
  EXPECT_NEAR(eb.gammaA, 0.36 + 0.5, 1e-14);
  const cplx n = (eb.sigma_w * eb.Aop_w.adjoint() * eb.Aop_w).trace();
  EXPECT_NEAR(n.real(), 0.36, 1e-9);
}

TEST(EB, RejectsDependentStates) {
  const Constellation con({cplx(0.5, 0), cplx(0.5, 0)}, {0.5, 0.5});
  EXPECT_THROW(eb_representation(con), InvalidArgument);
}

}  // namespace
}  // namespace dmqkd
