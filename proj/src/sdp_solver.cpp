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

// Infeasible primal-dual path following on one dense PSD block plus a
// nonnegative orthant holding the inequality slacks. HKM search direction,
// Mehrotra predictor-corrector.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "dmqkd/error.hpp"
#include "dmqkd/sdp.hpp"

namespace dmqkd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inner(const RMatrix& A, const RMatrix& B) { return A.cwiseProduct(B).sum(); }

RMatrix sym(const RMatrix& A) { return 0.5 * (A + A.transpose()); }

// Largest t with X + t dX >= 0 (X positive definite).
double max_step_psd(const RMatrix& X, const RMatrix& dX) {
  Eigen::LLT<RMatrix> llt(X);
  if (llt.info() != Eigen::Success) return 0.0;
  const auto L = llt.matrixL();
  RMatrix W = L.solve(dX);
  W = L.solve(W.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(W), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()[0];
  return lmin >= 0.0 ? kInf : -1.0 / lmin;
}

double max_step_lp(const Eigen::VectorXd& s, const Eigen::VectorXd& ds) {
  double t = kInf;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (ds[i] < 0.0) t = std::min(t, -s[i] / ds[i]);
  }
  return t;
}

struct Scaled {
  int n = 0;
  int m = 0;
  RMatrix C;
  double cscale = 1.0;
  std::vector<RMatrix> A;
  Eigen::VectorXd b;
  Eigen::VectorXd sigma;  // +1 for <=, -1 for >=, 0 for =
  std::vector<double> ascale;
  std::vector<int> ineq;  // constraint index of each slack
};

Scaled scale_problem(const SdpProblem& p) {
  Scaled s;
  s.n = p.dim();
  s.m = static_cast<int>(p.constraints.size());
  RMatrix C = p.sense == Sense::Maximize ? RMatrix(-p.C) : p.C;
  const double cn = C.norm();
  s.cscale = cn > 0.0 ? cn : 1.0;
  s.C = C / s.cscale;
  s.b.resize(s.m);
  s.sigma.resize(s.m);
  for (int i = 0; i < s.m; ++i) {
    const auto& c = p.constraints[i];
    const double an = c.A.norm();
    if (!(an > 0.0)) {
      throw InvalidArgument("solve: constraint '" + c.name + "' has a zero matrix");
    }
    s.A.push_back(c.A / an);
    s.ascale.push_back(an);
    s.b[i] = c.rhs / an;
    s.sigma[i] = c.kind == ConstraintKind::LessEqual     ? 1.0
                 : c.kind == ConstraintKind::GreaterEqual ? -1.0
                                                          : 0.0;
    if (s.sigma[i] != 0.0) s.ineq.push_back(i);
  }
  return s;
}

}  // namespace

namespace {

SdpSolution solve_reduced(const SdpProblem& p, const SolverOptions& opt) {
  if (!(opt.tol >= 1e-12)) throw InvalidArgument("solve: tolerance below 1e-12");
  if (p.dim() > 1024) throw InvalidArgument("solve: dense solver limited to dimension 1024");
  const Scaled S = scale_problem(p);
  const DualProblem dual = build_dual(p);
  const int n = S.n, m = S.m;
  const int q = static_cast<int>(S.ineq.size());
  const RMatrix I = RMatrix::Identity(n, n);

  // Starting point after SDPT3.
  double bmax = 0.0;
  for (int i = 0; i < m; ++i) bmax = std::max(bmax, (1.0 + std::abs(S.b[i])) / 2.0);
  const double xi = std::max({10.0, std::sqrt(double(n)), n * bmax});
  const double eta = std::max({10.0, std::sqrt(double(n))});
  RMatrix X = xi * I, Z = eta * I;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd s = Eigen::VectorXd::Constant(q, xi), z = Eigen::VectorXd::Constant(q, eta);

  SdpSolution sol;
  sol.status = SdpStatus::NumericalLimit;
  const double bnorm = S.b.norm(), cnorm = S.C.norm();
  double pobj = 0.0, dobj = 0.0;
  int stalls = 0;

  // Best iterate by max(pinf, dinf, relgap); the end game can lose accuracy.
  struct Best {
    double merit = std::numeric_limits<double>::infinity();
    RMatrix X;
    Eigen::VectorXd y;
    double pobj = 0.0, dobj = 0.0, pinf = 0.0, dinf = 0.0;
    int since = 0;
  } best;

  auto to_multipliers = [&](const Eigen::VectorXd& yy) {
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) {
      const double yh = yy[i] * S.cscale / S.ascale[i];
      w[i] = p.constraints[i].kind == ConstraintKind::GreaterEqual ? yh : -yh;
    }
    return w;
  };

  int it = 0;
  for (;; ++it) {
    Eigen::VectorXd Rp(m);
    for (int i = 0; i < m; ++i) Rp[i] = S.b[i] - inner(S.A[i], X);
    for (int k = 0; k < q; ++k) Rp[S.ineq[k]] -= S.sigma[S.ineq[k]] * s[k];
    RMatrix Rd = S.C - Z;
    for (int i = 0; i < m; ++i) Rd -= y[i] * S.A[i];
    Eigen::VectorXd rl(q);
    for (int k = 0; k < q; ++k) rl[k] = -S.sigma[S.ineq[k]] * y[S.ineq[k]] - z[k];

    pobj = inner(S.C, X);
    dobj = S.b.dot(y);
    const double mu = (inner(X, Z) + s.dot(z)) / (n + q);
    sol.pinf = Rp.norm() / (1.0 + bnorm);
    sol.dinf = std::sqrt(Rd.squaredNorm() + rl.squaredNorm()) / (1.0 + cnorm);
    // Gap measured in the caller's units, not the normalized ones.
    const double relgap = std::abs(pobj - dobj) * S.cscale /
                          (1.0 + S.cscale * (std::abs(pobj) + std::abs(dobj)));
    if (opt.record_trace) {
      const double sgn = p.sense == Sense::Maximize ? -1.0 : 1.0;
      const auto ev = dual.evaluate(to_multipliers(y));
      sol.trace.push_back({sgn * pobj * S.cscale, sgn * dobj * S.cscale, ev.certified});
    }
    if (opt.verbose) {
      std::fprintf(stderr, "%3d  pobj %+.12e  dobj %+.12e  pinf %.2e  dinf %.2e  gap %.2e  mu %.2e\n",
                   it, pobj * S.cscale, dobj * S.cscale, sol.pinf, sol.dinf, relgap, mu);
    }
    const double merit = std::max({sol.pinf, sol.dinf, relgap});
    if (merit < best.merit) {
      best.since = merit < 0.9 * best.merit ? 0 : best.since + 1;
      best.merit = merit;
      best.X = X;
      best.y = y;
      best.pobj = pobj;
      best.dobj = dobj;
      best.pinf = sol.pinf;
      best.dinf = sol.dinf;
    } else {
      ++best.since;
    }
    if (merit < opt.tol) break;
    if (best.since >= 8 && mu < 1e-12) break;
    if (it >= opt.max_iter) break;
    if (!X.allFinite() || !Z.allFinite()) break;
    if (X.norm() > 1e14 || y.norm() > 1e14) {
      sol.status = SdpStatus::Infeasible;
      break;
    }

    Eigen::LLT<RMatrix> zchol(Z);
    if (zchol.info() != Eigen::Success) break;
    const RMatrix Zinv = zchol.solve(I);
    std::vector<RMatrix> G(m);
    for (int j = 0; j < m; ++j) G[j] = X * S.A[j] * Zinv;
    RMatrix Msch(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) Msch(i, j) = Msch(j, i) = inner(S.A[i], G[j]);
    }
    for (int k = 0; k < q; ++k) {
      const int i = S.ineq[k];
      Msch(i, i) += s[k] / z[k];
    }
    Eigen::LDLT<RMatrix> mchol(Msch);
    if (mchol.info() != Eigen::Success) break;
    const RMatrix XRdZ = X * Rd * Zinv;

    // Direction for complementarity target Rc (matrix) and rc (slacks),
    // given Rc Zinv.
    auto direction = [&](const RMatrix& RcZinv, const Eigen::VectorXd& rc, RMatrix& dX,
                         Eigen::VectorXd& dy, RMatrix& dZ, Eigen::VectorXd& ds,
                         Eigen::VectorXd& dz) {
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i) rhs[i] = Rp[i] - inner(S.A[i], RcZinv) + inner(S.A[i], XRdZ);
      for (int k = 0; k < q; ++k) {
        const int i = S.ineq[k];
        rhs[i] += -S.sigma[i] * rc[k] / z[k] + S.sigma[i] * (s[k] / z[k]) * rl[k];
      }
      dy = mchol.solve(rhs);
      dZ = Rd;
      for (int j = 0; j < m; ++j) dZ -= dy[j] * S.A[j];
      dX = sym(RcZinv - X * dZ * Zinv);
      dz.resize(q);
      ds.resize(q);
      for (int k = 0; k < q; ++k) {
        dz[k] = rl[k] - S.sigma[S.ineq[k]] * dy[S.ineq[k]];
        ds[k] = (rc[k] - s[k] * dz[k]) / z[k];
      }
    };

    RMatrix dXa, dZa;
    Eigen::VectorXd dya, dsa, dza;
    direction(-X, -s.cwiseProduct(z), dXa, dya, dZa, dsa, dza);
    const double tau = 0.95;
    double ap = std::min(1.0, std::min(max_step_psd(X, dXa), max_step_lp(s, dsa)));
    double ad = std::min(1.0, std::min(max_step_psd(Z, dZa), max_step_lp(z, dza)));
    const double mu_aff = (inner(X + ap * dXa, Z + ad * dZa) +
                           (s + ap * dsa).dot(z + ad * dza)) / (n + q);
    const double sc = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    const RMatrix RcZinv = sc * mu * Zinv - X - dXa * dZa * Zinv;
    Eigen::VectorXd rc(q);
    for (int k = 0; k < q; ++k) rc[k] = sc * mu - s[k] * z[k] - dsa[k] * dza[k];
    RMatrix dX, dZ;
    Eigen::VectorXd dy, ds, dz;
    direction(RcZinv, rc, dX, dy, dZ, ds, dz);
    ap = std::min(1.0, tau * std::min(max_step_psd(X, dX), max_step_lp(s, ds)));
    ad = std::min(1.0, tau * std::min(max_step_psd(Z, dZ), max_step_lp(z, dz)));
    if (ap < 1e-12 && ad < 1e-12) {
      if (++stalls > 3) break;
    } else {
      stalls = 0;
    }
    X = sym(X + ap * dX);
    s += ap * ds;
    y += ad * dy;
    Z = sym(Z + ad * dZ);
    z += ad * dz;
  }

  if (std::isfinite(best.merit) && sol.status != SdpStatus::Infeasible) {
    X = best.X;
    y = best.y;
    pobj = best.pobj;
    dobj = best.dobj;
    sol.pinf = best.pinf;
    sol.dinf = best.dinf;
    if (best.merit < opt.tol) sol.status = SdpStatus::Optimal;
  }
  const double sgn = p.sense == Sense::Maximize ? -1.0 : 1.0;
  sol.iterations = it;
  sol.primal_value = sgn * pobj * S.cscale;
  sol.dual_value = sgn * dobj * S.cscale;
  sol.gap = std::abs(sol.primal_value - sol.dual_value) / (1.0 + std::abs(sol.primal_value));
  sol.dual = to_multipliers(y);
  const auto ev = dual.evaluate(sol.dual);
  const double widen = std::abs(sol.primal_value - sol.dual_value);
  sol.bound = p.sense == Sense::Maximize ? ev.certified + widen : ev.certified - widen;
  if (opt.keep_primal) sol.X = X;
  return sol;
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SolverOptions& opt) {
  p.validate();
  // Constraints with a zero matrix are either vacuous or unsatisfiable.
  SdpProblem r = p;
  r.constraints.clear();
  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(p.constraints.size()); ++i) {
    const auto& c = p.constraints[i];
    if (c.A.norm() > 0.0) {
      r.constraints.push_back(c);
      kept.push_back(i);
      continue;
    }
    const bool ok = c.kind == ConstraintKind::LessEqual      ? c.rhs >= 0.0
                    : c.kind == ConstraintKind::GreaterEqual ? c.rhs <= 0.0
                                                             : c.rhs == 0.0;
    if (!ok) {
      SdpSolution bad;
      bad.status = SdpStatus::Infeasible;
      bad.primal_value = bad.dual_value = bad.bound =
          p.sense == Sense::Maximize ? -kInf : kInf;
      return bad;
    }
  }
  if (kept.size() == p.constraints.size()) return solve_reduced(p, opt);
  SdpSolution sol = solve_reduced(r, opt);
  std::vector<double> full(p.constraints.size(), 0.0);
  for (std::size_t k = 0; k < kept.size() && k < sol.dual.size(); ++k) full[kept[k]] = sol.dual[k];
  if (!sol.dual.empty()) sol.dual = std::move(full);
  return sol;
}

}  // namespace dmqkd
