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

#include "dmqkd/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "dmqkd/error.hpp"

namespace dmqkd {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-17;

// ln(e^la - e^lb), la >= lb.
double log_diff_exp(double la, double lb) {
  if (lb == kNegInf) return la;
  if (lb >= la) return kNegInf;
  return la + std::log1p(-std::exp(lb - la));
}

// ln ∫_0^inf t^a e^{-t²/2} dt = ln(2^{(a-1)/2} Γ((a+1)/2)).
double log_half_total(int a) {
  return 0.5 * (a - 1) * std::numbers::ln2 + std::lgamma(0.5 * (a + 1));
}

// Positive-term series: ∫_0^x = x^{a+1} e^{-x²/2} Σ_k x^{2k} / Π_{i<=k}(a+1+2i).
// Used for x² <= a+1, where the term ratio stays below one.
double log_lower_series(int a, double x) {
  const double x2 = x * x;
  double term = 1.0 / (a + 1);
  double sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= x2 / (a + 1 + 2 * k);
    sum += term;
    if (term < kEps * sum) break;
  }
  return (a + 1) * std::log(x) - 0.5 * x2 + std::log(sum);
}

// Continued fraction (modified Lentz) for Γ(s,z), s=(a+1)/2, z=x²/2.
// Used for x² > a+1.
double log_upper_fraction(int a, double x) {
  const double s = 0.5 * (a + 1);
  const double z = 0.5 * x * x;
  constexpr double tiny = 1e-300;
  double b = z + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return 0.5 * (a - 1) * std::numbers::ln2 - z + s * std::log(z) + std::log(h);
}

// ln ∫_0^x t^a e^{-t²/2}.
double log_lower(int a, double x) {
  if (x <= 0.0) return kNegInf;
  if (std::isinf(x)) return log_half_total(a);
  if (x * x <= a + 1) return log_lower_series(a, x);
  return log_diff_exp(log_half_total(a), log_upper_fraction(a, x));
}

// ln ∫_x^inf t^a e^{-t²/2}.
double log_upper(int a, double x) {
  if (std::isinf(x)) return kNegInf;
  if (x <= 0.0) return log_half_total(a);
  if (x * x > a + 1) return log_upper_fraction(a, x);
  return log_diff_exp(log_half_total(a), log_lower_series(a, x));
}

void check_order(int a) {
  if (a < 0) throw InvalidArgument("gauss_moment: order must be non-negative");
}

}  // namespace

double log_gauss_moment_positive(int a, double lo, double hi) {
  check_order(a);
  if (!(lo >= 0.0) || !(hi >= lo)) {
    throw InvalidArgument("log_gauss_moment_positive: need 0 <= lo <= hi");
  }
  if (hi == lo) return kNegInf;
  // Split at the integrand's peak sqrt(a); each side is then a difference of
  // well-separated monotone quantities.
  const double peak = std::sqrt(static_cast<double>(a));
  if (hi <= peak) return log_diff_exp(log_lower(a, hi), log_lower(a, lo));
  if (lo >= peak) return log_diff_exp(log_upper(a, lo), log_upper(a, hi));
  const double left = log_diff_exp(log_lower(a, peak), log_lower(a, lo));
  const double right = log_diff_exp(log_upper(a, peak), log_upper(a, hi));
  const double m = std::max(left, right);
  if (m == kNegInf) return kNegInf;
  return m + std::log(std::exp(left - m) + std::exp(right - m));
}

double gauss_moment(int a, double lo, double hi) {
  check_order(a);
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw InvalidArgument("gauss_moment: need lo <= hi");
  }
  const double odd = (a % 2 == 0) ? 1.0 : -1.0;
  double value = 0.0;
  if (hi > 0.0) value += std::exp(log_gauss_moment_positive(a, std::max(lo, 0.0), hi));
  if (lo < 0.0) {
    value += odd * std::exp(log_gauss_moment_positive(a, std::max(-hi, 0.0), -lo));
  }
  return value;
}

std::vector<double> scaled_gauss_moments(int max_order, double lo, double hi,
                                         double scale) {
  check_order(max_order);
  if (!(scale > 0.0)) throw InvalidArgument("scaled_gauss_moments: scale must be positive");
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw InvalidArgument("scaled_gauss_moments: need lo <= hi");
  }
  const double log_scale = std::log(scale);
  std::vector<double> out(max_order + 1, 0.0);
  for (int a = 0; a <= max_order; ++a) {
    const double shift = a * log_scale;
    const double odd = (a % 2 == 0) ? 1.0 : -1.0;
    double value = 0.0;
    if (hi > 0.0) {
      value += std::exp(log_gauss_moment_positive(a, std::max(lo, 0.0), hi) - shift);
    }
    if (lo < 0.0) {
      value += odd * std::exp(
          log_gauss_moment_positive(a, std::max(-hi, 0.0), -lo) - shift);
    }
    out[a] = value;
  }
  return out;
}

std::vector<double> scaled_gauss_tail_moments(int max_order, double bound,
                                              double scale) {
  check_order(max_order);
  if (!(bound >= 0.0) || !(scale > 0.0)) {
    throw InvalidArgument("scaled_gauss_tail_moments: need bound >= 0, scale > 0");
  }
  const double log_scale = std::log(scale);
  std::vector<double> out(max_order + 1, 0.0);
  // Odd orders cancel between the two tails.
  for (int a = 0; a <= max_order; a += 2) {
    out[a] = 2.0 * std::exp(log_upper(a, bound) - a * log_scale);
  }
  return out;
}

double gamma_q(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0)) throw InvalidArgument("gamma_q: need s > 0, x >= 0");
  return boost::math::gamma_q(s, x);
}

double log_factorial(int n) {
  if (n < 0) throw InvalidArgument("log_factorial: negative argument");
  return std::lgamma(n + 1.0);
}

}  // namespace dmqkd
