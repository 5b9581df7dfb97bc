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

#include "dmqkd/gaussian_bound.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "dmqkd/error.hpp"

namespace dmqkd {
namespace {

constexpr double kPurityGuard = 1e-9;

double log2p(double x) { return std::log1p(x) / std::numbers::ln2; }

void check_physical(double gA, double gB, double gAB) {
  std::ostringstream os;
  os.precision(17);
  if (!std::isfinite(gA) || !std::isfinite(gB) || !std::isfinite(gAB)) {
    throw NumericalError("f_chi: non-finite covariance element");
  }
  if (gA < 0.5 - kPurityGuard || gB < 0.5 - kPurityGuard) {
    os << "unphysical CM: need gammaA, gammaB >= 1/2, got " << gA << ", " << gB;
    throw NumericalError(os.str());
  }
  const double det = gA * gB - gAB * gAB;
  if (det < 0.25 - kPurityGuard) {
    os << "unphysical CM: gammaA*gammaB - gammaAB^2 = " << det << " < 1/4";
    throw NumericalError(os.str());
  }
}

double clamp_half(double nu) {
  if (nu < 0.5 && nu > 0.5 - kPurityGuard) return 0.5;
  return nu;
}

void finish(CovBounds& cb) {
  if (cb.nu_minus < 0.5 - kPurityGuard) {
    std::ostringstream os;
    os.precision(17);
    os << "unphysical CM: symplectic eigenvalue " << cb.nu_minus << " < 1/2";
    throw NumericalError(os.str());
  }
  cb.nu_plus = clamp_half(cb.nu_plus);
  cb.nu_minus = clamp_half(cb.nu_minus);
  cb.nu_zero = clamp_half(cb.nu_zero);
  if (cb.nu_zero < 0.5) {
    throw NumericalError("unphysical conditional CM: symplectic eigenvalue below 1/2");
  }
  const double F = g_entropy(cb.nu_plus - 0.5) + g_entropy(cb.nu_minus - 0.5) -
                   g_entropy(cb.nu_zero - 0.5);
  if (F < -kPurityGuard) throw NumericalError("f_chi evaluated negative beyond rounding");
  cb.fchi = std::max(0.0, F);
}

}  // namespace

double g_entropy(double x) {
  if (!(x >= 0.0)) throw InvalidArgument("g_entropy: argument must be non-negative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  return log2p(x) + x * log2p(1.0 / x);
}

CovBounds f_chi_detail(double gA, double gB, double gAB) {
  check_physical(gA, gB, gAB);
  Eigen::Matrix4d cm = Eigen::Matrix4d::Zero();
  cm(0, 0) = cm(1, 1) = gA;
  cm(2, 2) = cm(3, 3) = gB;
  cm(0, 2) = cm(2, 0) = gAB;
  cm(1, 3) = cm(3, 1) = -gAB;
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  // Moduli of eig(i Omega cm) via the antisymmetric K = cm^1/2 Omega cm^1/2,
  // whose singular values are those moduli and are well conditioned.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> sq(cm);
  const Eigen::Matrix4d root = sq.operatorSqrt();
  const Eigen::Matrix4d K = root * omega * root;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(K.transpose() * K, Eigen::EigenvaluesOnly);
  std::array<double, 4> mods;
  for (int i = 0; i < 4; ++i) mods[i] = std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  std::sort(mods.begin(), mods.end());
  CovBounds cb;
  cb.gammaA = gA;
  cb.gammaB = gB;
  cb.gammaAB = gAB;
  // Moduli come in pairs.
  cb.nu_minus = 0.5 * (mods[0] + mods[1]);
  cb.nu_plus = 0.5 * (mods[2] + mods[3]);

  const Eigen::Matrix2d A = gA * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d B = gB * Eigen::Matrix2d::Identity();
  Eigen::Matrix2d C = Eigen::Matrix2d::Zero();
  C(0, 0) = gAB;
  C(1, 1) = -gAB;
  const Eigen::Matrix2d cond =
      A - C * (B + 0.5 * Eigen::Matrix2d::Identity()).inverse() * C.transpose();
  cb.nu_zero = std::sqrt(cond.determinant());
  finish(cb);
  return cb;
}

CovBounds f_chi_closed_form(double gA, double gB, double gAB) {
  check_physical(gA, gB, gAB);
  // Delta +- 2 sqrt(det) factor as (a+b)^2 - 4c^2 and (a-b)^2.
  const double s = std::sqrt(std::max(0.0, (gA + gB) * (gA + gB) - 4.0 * gAB * gAB));
  const double t = std::abs(gA - gB);
  CovBounds cb;
  cb.gammaA = gA;
  cb.gammaB = gB;
  cb.gammaAB = gAB;
  cb.nu_plus = 0.5 * (s + t);
  cb.nu_minus = 0.5 * (s - t);
  cb.nu_zero = gA - gAB * gAB / (gB + 0.5);
  finish(cb);
  return cb;
}

double f_chi(double gA, double gB, double gAB) { return f_chi_detail(gA, gB, gAB).fchi; }

double shirokov_penalty(double dp, int d) {
  if (!(dp >= 0.0) || dp > 2.0) throw InvalidArgument("shirokov_penalty: need 0 <= delta' <= 2");
  if (d < 1) throw InvalidArgument("shirokov_penalty: need d >= 1");
  if (dp == 0.0) return 0.0;
  return dp * std::log2(static_cast<double>(d) * d) + 2.0 * (1.0 + dp) * log2p(dp) -
         2.0 * dp * std::log2(dp);
}

CutoffBudget cutoff_budget(double P0, double R, int d) {
  if (!(P0 >= 0.0)) throw InvalidArgument("cutoff_budget: P0 must be non-negative");
  if (P0 >= 0.25) {
    throw InvalidArgument("cutoff_budget: P0 >= 1/4 leaves no usable normalization; abort");
  }
  if (!(R > 0.0)) throw InvalidArgument("cutoff_budget: R must be positive");
  CutoffBudget cb;
  cb.P0 = P0;
  cb.N = static_cast<int>(std::floor(2.0 * R * R));
  cb.delta_prime = 2.0 * std::sqrt(2.0 * P0);
  cb.delta = shirokov_penalty(cb.delta_prime, d);
  cb.floor = 1.0 - 2.0 * P0;
  return cb;
}

}  // namespace dmqkd
