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

#include "dmqkd/finite_size.hpp"

#include <cmath>

#include "dmqkd/error.hpp"
#include "dmqkd/fock.hpp"
#include "dmqkd/protocol.hpp"

namespace dmqkd {

namespace {
bool open_unit(double e) { return e > 0.0 && e < 1.0; }
}  // namespace

void SecurityParams::validate() const {
  if (!(n >= 1.0) || !std::isfinite(n)) throw InvalidArgument("block size n must be >= 1");
  if (!(xi > 0.0 && xi <= 1.0)) throw InvalidArgument("xi must lie in (0, 1]");
  if (!open_unit(eps_s) || !open_unit(eps_h) || !open_unit(eps_PE)) {
    throw InvalidArgument("failure probabilities must lie in (0, 1)");
  }
}

const char* to_string(RateMode m) { return m == RateMode::Asymptotic ? "asymptotic" : "finite"; }

const char* to_string(RateStatus s) {
  switch (s) {
    case RateStatus::Positive: return "positive";
    case RateStatus::Nonpositive: return "nonpositive";
    case RateStatus::Aborted: return "aborted";
  }
  return "aborted";
}

double aep_delta(int d, double eps_s) {
  if (d < 2) throw InvalidArgument("aep_delta: d must be >= 2");
  if (!open_unit(eps_s)) throw InvalidArgument("aep_delta: eps_s must lie in (0, 1)");
  return 4.0 * (1.0 + std::log2(double(d))) * std::sqrt(std::log2(2.0 / (eps_s * eps_s)));
}

double hash_term(double n, double eps_h) {
  if (!(n >= 1.0)) throw InvalidArgument("hash_term: n must be >= 1");
  if (!open_unit(eps_h)) throw InvalidArgument("hash_term: eps_h must lie in (0, 1)");
  return 2.0 * std::log2(std::sqrt(2.0) * eps_h) / n;
}

Deltas confidence_deltas(double v_hat, double c_hat, double P0_hat, const SecurityParams& sp,
                         const DetectorModel& det, const Constellation& con) {
  (void)c_hat;
  sp.validate();
  const double R = det.R;
  if (!(v_hat >= 0.0 && v_hat <= R * R)) throw InvalidArgument("v_hat outside [0, R^2]");
  if (!(P0_hat >= 0.0 && P0_hat <= 1.0)) throw InvalidArgument("P0_hat outside [0, 1]");
  const double n = sp.n;
  const double L = std::log(1.0 / sp.eps_split());
  const double A = con.A();
  Deltas d;
  d.c = A * R * std::sqrt(L / (2.0 * n));
  const double rl = R * L / n;
  d.v = R * std::sqrt(2.0 * v_hat * L / n + rl * rl) + R * R * L / n;
  const double l = L / n;
  d.P = std::sqrt(2.0 * P0_hat * L / n + l * l) + l;
  return d;
}

double tail_bound_check(TailKind kind, double param, double n, double delta, double R,
                        double A) {
  if (!(n >= 1.0) || !(delta >= 0.0)) throw InvalidArgument("tail_bound_check: bad n or delta");
  double e = 0.0;
  switch (kind) {
    case TailKind::V:
      if (!(param > 0.0)) return delta > 0.0 ? 0.0 : 1.0;
      e = -n * delta * delta / (2.0 * R * R * param);
      break;
    case TailKind::C:
      if (!(A * R > 0.0)) return delta > 0.0 ? 0.0 : 1.0;
      e = -2.0 * n * delta * delta / (A * A * R * R);
      break;
    case TailKind::P:
      if (!(param > 0.0)) return delta > 0.0 ? 0.0 : 1.0;
      e = -n * delta * delta / (2.0 * param);
      break;
  }
  return std::exp(e);
}

RateResult key_rate(RateMode mode, const RateInputs& in, const SecurityParams& sp) {
  sp.validate();
  RateResult r;
  r.I_xy = in.I_xy;
  r.f_chi = in.f_chi;
  r.delta_shirokov = in.delta_shirokov;
  r.eps_prime = sp.eps_prime();
  r.r_inf = sp.xi * in.I_xy - in.f_chi - in.delta_shirokov;
  if (mode == RateMode::Finite) {
    r.aep_term = aep_delta(in.aep_alphabet, sp.eps_s) / std::sqrt(sp.n);
    r.hash_term = hash_term(sp.n, sp.eps_h);
    r.r_n = r.r_inf - r.aep_term + r.hash_term;
  } else {
    r.r_n = r.r_inf;
  }
  if (!std::isfinite(r.r_n)) {
    r.status = RateStatus::Aborted;
    r.message = "non-finite rate";
  } else {
    r.status = r.r_n > 0.0 ? RateStatus::Positive : RateStatus::Nonpositive;
  }
  return r;
}

}  // namespace dmqkd
