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

#include <string>

namespace dmqkd {

class Constellation;
class DetectorModel;

struct SecurityParams {
  double n = 1e10;  // block size
  double xi = 0.97;
  double eps_s = 1e-10;
  double eps_h = 1e-10;
  double eps_PE = 1e-10;

  double eps_prime() const { return eps_s + eps_h + eps_PE; }
  double eps_split() const { return eps_PE / 3.0; }  // eps_v = eps_c = eps_P
  void validate() const;
};

enum class RateMode { Asymptotic, Finite };
const char* to_string(RateMode m);

enum class RateStatus { Positive, Nonpositive, Aborted };
const char* to_string(RateStatus s);

struct Deltas {
  double v = 0.0;
  double c = 0.0;
  double P = 0.0;
};

struct RateResult {
  double r_inf = 0.0;
  double r_n = 0.0;
  double I_xy = 0.0;
  double f_chi = 0.0;
  double delta_shirokov = 0.0;
  double aep_term = 0.0;   // Delta / sqrt(n), subtracted
  double hash_term = 0.0;  // 2 log2(sqrt(2) eps_h) / n, added (non-positive)
  Deltas deltas;
  double eps_prime = 0.0;
  RateStatus status = RateStatus::Aborted;
  std::string message;
};

double aep_delta(int d, double eps_s);
double hash_term(double n, double eps_h);

Deltas confidence_deltas(double v_hat, double c_hat, double P0_hat, const SecurityParams& sp,
                         const DetectorModel& det, const Constellation& con);

enum class TailKind { V, C, P };
// kind V: param = true v, kind P: param = true P0, kind C: param ignored.
double tail_bound_check(TailKind kind, double param, double n, double delta, double R,
                        double A);

struct RateInputs {
  double I_xy = 0.0;
  double f_chi = 0.0;
  double delta_shirokov = 0.0;
  int aep_alphabet = 16;
};

RateResult key_rate(RateMode mode, const RateInputs& in, const SecurityParams& sp);

}  // namespace dmqkd
