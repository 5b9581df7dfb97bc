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

// Brute-force quadrature of the binned detector operators, independent of the
// moment recursion.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "dmqkd/fock.hpp"

namespace dmqkd::testing {

// 2D Gauss-Legendre assembly of sum_bins f(beta_jk) |beta><beta| d^2beta/pi,
// splitting each bin into sub x sub cells.
inline CMatrix gl_assembly(const DetectorModel& det, int nmax, int sub,
                    double (*weight)(cplx)) {
  const auto& x = boost::math::quadrature::gauss<double, 64>::abscissa();
  const auto& w = boost::math::quadrature::gauss<double, 64>::weights();
  std::vector<double> nodes, wts;  // reference nodes on [-1, 1]
  for (std::size_t i = 0; i < x.size(); ++i) {
    nodes.push_back(x[i]);
    wts.push_back(w[i]);
    if (x[i] != 0.0) {
      nodes.push_back(-x[i]);
      wts.push_back(w[i]);
    }
  }
  const int g = static_cast<int>(nodes.size());
  CMatrix out = CMatrix::Zero(nmax, nmax);
  for (int j = 1; j <= det.d; ++j) {
    for (int k = 1; k <= det.d; ++k) {
      const double f = weight(det.beta_center(j, k));
      CMatrix amps(nmax, g * g * sub * sub);
      Eigen::Index col = 0;
      const double h = det.width() / sub;
      for (int sj = 0; sj < sub; ++sj) {
        for (int sk = 0; sk < sub; ++sk) {
          const double q0 = det.lo(j) + sj * h, p0 = det.lo(k) + sk * h;
          for (int a = 0; a < g; ++a) {
            for (int b = 0; b < g; ++b) {
              const double q = q0 + 0.5 * h * (nodes[a] + 1);
              const double p = p0 + 0.5 * h * (nodes[b] + 1);
              const cplx beta(q / std::numbers::sqrt2, p / std::numbers::sqrt2);
              // dq dp / (2 pi) with the half-width Jacobians.
              const double wt = wts[a] * wts[b] * 0.25 * h * h / (2 * std::numbers::pi);
              cplx amp = std::exp(-0.5 * std::norm(beta)) * std::sqrt(wt);
              for (int n = 0; n < nmax; ++n) {
                amps(n, col) = amp;
                amp *= beta / std::sqrt(double(n + 1));
              }
              ++col;
            }
          }
        }
      }
      out += f * (amps * amps.adjoint());
    }
  }
  return out;
}

inline double weight_norm2(cplx b) { return std::norm(b); }
inline double weight_one(cplx) { return 1.0; }

}  // namespace dmqkd::testing
