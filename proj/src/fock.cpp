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

#include "dmqkd/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dmqkd/error.hpp"
#include "dmqkd/protocol.hpp"
#include "dmqkd/special.hpp"

namespace dmqkd {

DetectorModel::DetectorModel(double range, int bins) : R(range), d(bins) {
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw InvalidArgument("detector range must be positive and finite");
  }
  if (bins < 1) throw InvalidArgument("detector needs at least one bin");
  bin_edges.resize(d + 1);
  bin_centers.resize(d);
  const double w = 2.0 * R / d;
  for (int j = 0; j <= d; ++j) bin_edges[j] = -R + j * w;
  bin_edges[0] = -R;
  bin_edges[d] = R;
  for (int j = 0; j < d; ++j) bin_centers[j] = -R + (2 * j + 1) * R / d;
}

cplx DetectorModel::beta_center(int j, int k) const {
  return cplx(center(j), center(k)) / std::numbers::sqrt2;
}

int DetectorModel::cutoff() const {
  return static_cast<int>(std::floor(2.0 * R * R));
}

int DetectorModel::digitize(double t) const {
  if (!(t >= -R && t <= R)) return 0;
  const int j = static_cast<int>(std::ceil((t + R) / width()));
  return std::clamp(j, 1, d);
}

CVector coherent_amplitudes(cplx beta, int nmax) {
  if (nmax < 1) throw InvalidArgument("coherent_amplitudes: nmax must be >= 1");
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw InvalidArgument("coherent_amplitudes: non-finite amplitude");
  }
  CVector out(nmax);
  out[0] = std::exp(-0.5 * std::norm(beta));
  for (int n = 1; n < nmax; ++n) out[n] = out[n - 1] * beta / std::sqrt(double(n));
  return out;
}

double moment_scale(double R, int nmax) {
  return std::max(R, std::sqrt(2.0 * nmax));
}

namespace {

// C(m,l)/2^m for 0 <= l <= m <= mmax, by the halved Pascal recursion.
std::vector<std::vector<double>> half_binomials(int mmax) {
  std::vector<std::vector<double>> bn(mmax + 1);
  bn[0] = {1.0};
  for (int m = 1; m <= mmax; ++m) {
    bn[m].assign(m + 1, 0.0);
    for (int l = 0; l <= m; ++l) {
      const double left = l > 0 ? bn[m - 1][l - 1] : 0.0;
      const double right = l < m ? bn[m - 1][l] : 0.0;
      bn[m][l] = 0.5 * (left + right);
    }
  }
  return bn;
}

int max_order(int nmax) { return 2 * (nmax - 1); }

std::vector<double> axis_moments(const DetectorModel& det, int j, double s,
                                 int nmax) {
  return scaled_gauss_moments(max_order(nmax), det.lo(j), det.hi(j), s);
}

void check_nmax(const DetectorModel& det, int nmax) {
  if (nmax < det.cutoff() + 1) {
    throw InvalidArgument("nmax " + std::to_string(nmax) +
                          " would truncate the photon-number projector (need >= " +
                          std::to_string(det.cutoff() + 1) + ")");
  }
}

}  // namespace

CMatrix moment_kernel(const std::vector<double>& fq,
                      const std::vector<double>& gp, double scale, int nmax) {
  const int dmax = max_order(nmax);
  if (static_cast<int>(fq.size()) < dmax + 1 || static_cast<int>(gp.size()) < dmax + 1) {
    throw InvalidArgument("moment_kernel: moment vectors too short");
  }
  const auto bn = half_binomials(nmax);
  std::vector<double> lf(nmax);
  for (int n = 0; n < nmax; ++n) lf[n] = log_factorial(n);
  const double ls = std::log(scale);
  const double l2 = std::numbers::ln2;
  const double l2pi = std::log(2.0 * std::numbers::pi);

  CMatrix X = CMatrix::Zero(nmax, nmax);
  for (int n = 0; n < nmax; ++n) {
    for (int m = 0; m <= n; ++m) {
      const int k = n - m;
      const int D = n + m;
      double re = 0.0, im = 0.0;
      for (int l = 0; l <= m; ++l) {
        const double bl = bn[m][l];
        double sre = 0.0, sim = 0.0;
        for (int a = 0; a <= k; ++a) {
          const int eq = 2 * l + a;
          const double t = bn[k][a] * fq[eq] * gp[D - eq];
          switch ((k - a) & 3) {
            case 0: sre += t; break;
            case 1: sim += t; break;
            case 2: sre -= t; break;
            default: sim -= t; break;
          }
        }
        re += bl * sre;
        im += bl * sim;
      }
      const double lp = D * ls + n * l2 - 0.5 * D * l2 - 0.5 * (lf[n] + lf[m]) - l2pi;
      const double pref = std::exp(lp);
      X(n, m) = cplx(pref * re, pref * im);
      if (m != n) X(m, n) = std::conj(X(n, m));
    }
  }
  return X;
}

CMatrix bin_projector(int j, int k, const DetectorModel& det, int nmax) {
  if (j < 1 || j > det.d || k < 1 || k > det.d) {
    throw InvalidArgument("bin_projector: bin index out of range");
  }
  if (nmax < 1) throw InvalidArgument("bin_projector: nmax must be >= 1");
  const double s = moment_scale(det.R, nmax);
  return moment_kernel(axis_moments(det, j, s, nmax), axis_moments(det, k, s, nmax), s,
                       nmax);
}

namespace {

// The centered square grid is invariant under (q,p) -> (-p,q) and p -> -p, so
// the detector operators are real and X_{nm} vanishes unless m - n = residue
// (mod 4). Imposing this removes cancellation roundoff.
CMatrix impose_grid_symmetry(const CMatrix& X, int residue) {
  CMatrix out = CMatrix::Zero(X.rows(), X.cols());
  for (Eigen::Index n = 0; n < X.rows(); ++n) {
    for (Eigen::Index m = 0; m < X.cols(); ++m) {
      if ((((m - n) % 4) + 4) % 4 == residue) out(n, m) = X(n, m).real();
    }
  }
  return out;
}

}  // namespace

FockOperatorSet build_detector_operators(const DetectorModel& det, int nmax) {
  check_nmax(det, nmax);
  const int dmax = max_order(nmax);
  const double s = moment_scale(det.R, nmax);
  const double inf = std::numeric_limits<double>::infinity();

  const auto in = scaled_gauss_moments(dmax, -det.R, det.R, s);
  const auto full = scaled_gauss_moments(dmax, -inf, inf, s);
  const auto tail = scaled_gauss_tail_moments(dmax, det.R, s);
  std::vector<double> w1(dmax + 1, 0.0), w2(dmax + 1, 0.0);
  for (int j = 1; j <= det.d; ++j) {
    const auto mj = axis_moments(det, j, s, nmax);
    const double c = det.center(j);
    for (int a = 0; a <= dmax; ++a) {
      w1[a] += c * mj[a];
      w2[a] += c * c * mj[a];
    }
  }

  FockOperatorSet ops;
  ops.nmax = nmax;
  ops.N = det.cutoff();
  ops.U = impose_grid_symmetry(moment_kernel(in, in, s, nmax), 0);
  ops.V = impose_grid_symmetry(
      0.5 * (moment_kernel(w2, in, s, nmax) + moment_kernel(in, w2, s, nmax)), 0);
  const cplx I(0.0, 1.0);
  ops.Bop = impose_grid_symmetry(
      (moment_kernel(w1, in, s, nmax) + I * moment_kernel(in, w1, s, nmax)) / std::numbers::sqrt2,
      1);
  ops.IminusU = impose_grid_symmetry(
      moment_kernel(tail, full, s, nmax) + moment_kernel(in, tail, s, nmax), 0);
  ops.num_objective = number_objective(ops.N, nmax);
  const auto tails = tail_operators(det.R, nmax);
  ops.W_diag = tails.W_diag;
  ops.VR_diag = tails.VR_diag;
  return ops;
}

TailOperators tail_operators(double R, int nmax) {
  if (!(R > 0.0)) throw InvalidArgument("tail_operators: R must be positive");
  if (nmax < 1) throw InvalidArgument("tail_operators: nmax must be >= 1");
  TailOperators t;
  t.W_diag.resize(nmax);
  t.VR_diag.resize(nmax);
  const double r2 = 2.0 * R * R;
  for (int n = 0; n < nmax; ++n) {
    t.W_diag[n] = gamma_q(n + 1.0, r2);
    t.VR_diag[n] = n > r2 ? 1.0 : 0.0;
  }
  return t;
}

RVector number_objective(int N, int nmax) {
  RVector diag = RVector::Zero(nmax);
  for (int n = 0; n <= N && n < nmax; ++n) diag[n] = n + 0.5;
  return diag;
}

RMatrix lowering_operator(int nmax, int N) {
  RMatrix b = RMatrix::Zero(nmax, nmax);
  for (int n = 1; n < nmax && n <= N; ++n) b(n - 1, n) = std::sqrt(double(n));
  return b;
}

CMatrix covariance_objective(const CMatrix& a_op, int N, int nmax) {
  const int m = static_cast<int>(a_op.rows());
  if (a_op.cols() != m) throw InvalidArgument("covariance_objective: a_op must be square");
  const RMatrix b = lowering_operator(nmax, N);
  CMatrix out = CMatrix::Zero(m * nmax, m * nmax);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      const cplx axy = a_op(x, y);
      const cplx adag = std::conj(a_op(y, x));
      auto blk = out.block(x * nmax, y * nmax, nmax, nmax);
      blk = 0.5 * (axy * b.cast<cplx>() + adag * b.transpose().cast<cplx>());
    }
  }
  return out;
}

ObjectiveMatrices build_objectives(const EBRepresentation& ebr,
                                   const DetectorModel& det, int nmax) {
  check_nmax(det, nmax);
  if (ebr.Aop.rows() != ebr.sigma.rows() || ebr.Aop.rows() < 1) {
    throw InvalidArgument("build_objectives: EB matrices have inconsistent dimensions");
  }
  ObjectiveMatrices out;
  out.num_objective = number_objective(det.cutoff(), nmax);
  out.cov_objective = covariance_objective(ebr.Aop, det.cutoff(), nmax);
  return out;
}

}  // namespace dmqkd
