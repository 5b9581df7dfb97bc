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

#include "dmqkd/protocol.hpp"

#include <cmath>
#include <numbers>

#include "dmqkd/error.hpp"

namespace dmqkd {
namespace {

constexpr double kMinAmplitude = 1e-3;

cplx ipow(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

cplx quarter_phase(int e) { return ipow(e); }

}  // namespace

Constellation::Constellation(std::vector<cplx> amps, std::vector<double> p)
    : amplitudes(std::move(amps)), probs(std::move(p)) {
  if (amplitudes.empty()) throw InvalidArgument("constellation has no states");
  if (amplitudes.size() != probs.size()) {
    throw InvalidArgument("constellation: amplitude and probability counts differ");
  }
  for (const auto& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InvalidArgument("constellation: non-finite amplitude");
    }
  }
  double total = 0.0;
  for (double q : probs) {
    if (!(q >= 0.0)) throw InvalidArgument("constellation: negative probability");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("constellation: probabilities must sum to one");
  }
}

double Constellation::A() const {
  double best = 0.0;
  for (const auto& a : amplitudes) {
    best = std::max(best, std::abs(a.real()) + std::abs(a.imag()));
  }
  return best / std::numbers::sqrt2;
}

double Constellation::cnorm_bound(double R) const { return A() * R; }

double Constellation::mean_photon_number() const {
  double m = 0.0;
  for (int x = 0; x < M(); ++x) m += probs[x] * std::norm(amplitudes[x]);
  return m;
}

bool Constellation::is_qpsk(double tol) const {
  if (M() != 4) return false;
  const cplx alpha = amplitudes[0];
  if (std::abs(alpha) < kMinAmplitude) return false;
  for (int x = 0; x < 4; ++x) {
    if (std::abs(probs[x] - 0.25) > tol) return false;
    if (std::abs(amplitudes[x] - alpha * ipow(x)) > tol * std::max(1.0, std::abs(alpha))) {
      return false;
    }
  }
  return true;
}

Constellation make_qpsk(double amp, double phase) {
  if (!(amp > 0.0)) throw InvalidArgument("QPSK amplitude must be positive");
  const cplx alpha = std::polar(amp, phase);
  std::vector<cplx> amps(4);
  for (int x = 0; x < 4; ++x) amps[x] = alpha * ipow(x);
  return Constellation(amps, std::vector<double>(4, 0.25));
}

Constellation make_qpsk(double amp) { return make_qpsk(amp, std::numbers::pi / 4); }

std::array<double, 4> qpsk_lambdas(double amp) {
  if (!(amp > 0.0) || !std::isfinite(amp)) {
    throw InvalidArgument("qpsk_lambdas: amplitude must be positive");
  }
  const double t = amp * amp;
  std::array<double, 4> lam{0.0, 0.0, 0.0, 0.0};
  double term = std::exp(-t);
  double sum = 0.0;
  for (int m = 0; m < 100000; ++m) {
    if (m > 0) term *= t / m;
    lam[m % 4] += term;
    sum += term;
    if (m > t && term < 1e-18 * sum) break;
  }
  for (double l : lam) {
    if (!(l > 0.0)) throw NumericalError("qpsk_lambdas: eigenvalue underflow");
  }
  return lam;
}

CMatrix sigma_matrix(const Constellation& con) {
  const int M = con.M();
  CMatrix s(M, M);
  for (int x = 0; x < M; ++x) {
    for (int y = 0; y < M; ++y) {
      const cplx ax = con.amplitudes[x], ay = con.amplitudes[y];
      s(x, y) = std::sqrt(con.probs[x] * con.probs[y]) *
                std::exp(-0.5 * (std::norm(ax) + std::norm(ay)) + std::conj(ay) * ax);
    }
  }
  return s;
}

CMatrix a_matrix(cplx alpha) {
  const double amp = std::abs(alpha);
  if (!(amp >= kMinAmplitude)) {
    throw InvalidArgument("a_matrix: amplitude below 1e-3 is too small for the eigenvalue ratios");
  }
  const auto lam = qpsk_lambdas(amp);
  std::array<double, 4> ratio;
  for (int y = 0; y < 4; ++y) ratio[y] = std::sqrt(lam[(y + 3) % 4] / lam[y]);
  CMatrix A(4, 4);
  for (int x = 0; x < 4; ++x) {
    const cplx ax = alpha * ipow(x);
    for (int xp = 0; xp < 4; ++xp) {
      cplx acc = 0.0;
      for (int y = 0; y < 4; ++y) acc += quarter_phase(y * (x - xp)) * ratio[y];
      A(x, xp) = std::conj(ax) * 0.25 * acc;
    }
  }
  return A;
}

CMatrix a_matrix(double amp) { return a_matrix(std::polar(amp, std::numbers::pi / 4)); }

namespace {

void finish(EBRepresentation& eb, const Constellation& con) {
  const int M = con.M();
  eb.Amult = CMatrix::Zero(M, M);
  for (int x = 0; x < M; ++x) eb.Amult(x, x) = con.amplitudes[x];
  eb.gammaA = con.mean_photon_number() + 0.5;
}

}  // namespace

EBRepresentation eb_representation_numeric(const Constellation& con) {
  const int M = con.M();
  CMatrix G(M, M), Ka(M, M);
  for (int x = 0; x < M; ++x) {
    for (int y = 0; y < M; ++y) {
      const cplx ax = con.amplitudes[x], ay = con.amplitudes[y];
      const double w = std::sqrt(con.probs[x] * con.probs[y]);
      const double base = -0.5 * (std::norm(ax) + std::norm(ay));
      G(x, y) = w * std::exp(base + std::conj(ax) * ay);
      Ka(x, y) = w * std::conj(ay) * std::exp(base + ax * std::conj(ay));
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(G);
  if (es.info() != Eigen::Success) throw NumericalError("Gram matrix diagonalization failed");
  const RVector mu = es.eigenvalues();
  for (int k = 0; k < M; ++k) {
    if (!(mu[k] > 1e-14)) {
      throw InvalidArgument("constellation states are (numerically) linearly dependent");
    }
  }
  const CMatrix& Wm = es.eigenvectors();
  EBRepresentation eb;
  eb.lambdas.assign(mu.data(), mu.data() + M);
  eb.basis = Wm.conjugate();
  eb.sigma_w = mu.cast<cplx>().asDiagonal();
  CMatrix aw = Wm.transpose() * Ka * Wm.conjugate();
  for (int k = 0; k < M; ++k) {
    for (int l = 0; l < M; ++l) aw(k, l) /= std::sqrt(mu[k] * mu[l]);
  }
  eb.Aop_w = aw;
  finish(eb, con);
  eb.Amult_w = eb.basis.adjoint() * eb.Amult * eb.basis;
  eb.sigma = eb.basis * eb.sigma_w * eb.basis.adjoint();
  eb.Aop = eb.basis * eb.Aop_w * eb.basis.adjoint();
  eb.bob_phase = 0.0;
  return eb;
}

EBRepresentation eb_representation(const Constellation& con) {
  if (!con.is_qpsk()) return eb_representation_numeric(con);
  const cplx alpha = con.amplitudes[0];
  const double amp = std::abs(alpha);
  const auto lam = qpsk_lambdas(amp);
  EBRepresentation eb;
  eb.lambdas.assign(lam.begin(), lam.end());
  eb.sigma = sigma_matrix(con);
  eb.Aop = a_matrix(alpha);
  finish(eb, con);
  eb.basis = CMatrix(4, 4);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) eb.basis(x, y) = 0.5 * ipow(x * y);
  }
  eb.sigma_w = CMatrix::Zero(4, 4);
  eb.Aop_w = CMatrix::Zero(4, 4);
  eb.Amult_w = CMatrix::Zero(4, 4);
  for (int y = 0; y < 4; ++y) {
    const int ym = (y + 3) % 4;
    eb.sigma_w(y, y) = lam[y];
    eb.Aop_w(ym, y) = std::conj(alpha) * std::sqrt(lam[ym] / lam[y]);
    eb.Amult_w(y, ym) = alpha;
  }
  eb.bob_phase = std::arg(alpha);
  return eb;
}

}  // namespace dmqkd
