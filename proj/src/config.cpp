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

#include "dmqkd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "dmqkd/error.hpp"

namespace dmqkd {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(v);
  while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
  if (out.empty()) out.push_back("");
  return out;
}

double to_double(const std::string& s, int line) {
  double x = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e || !std::isfinite(x)) {
    throw ConfigError("expected a number, got '" + s + "'", line);
  }
  return x;
}

long long to_int(const std::string& s, int line) {
  const double x = to_double(s, line);
  if (x != std::floor(x) || std::abs(x) > 9.0e15) {
    throw ConfigError("expected an integer, got '" + s + "'", line);
  }
  return static_cast<long long>(x);
}

bool to_bool(const std::string& s, int line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("expected a boolean, got '" + s + "'", line);
}

std::vector<double> double_list(const std::string& v, int line) {
  std::vector<double> out;
  for (const auto& t : split_list(v)) {
    if (t.empty()) throw ConfigError("empty list entry", line);
    out.push_back(to_double(t, line));
  }
  return out;
}

}  // namespace

Constellation RunConfig::constellation() const {
  std::vector<cplx> amps;
  for (int x = 0; x < M; ++x) {
    const double ph = phases.empty() ? std::numbers::pi / 4 + 2.0 * std::numbers::pi * x / M
                                     : phases[x];
    amps.push_back(std::polar(amplitude, ph));
  }
  return Constellation(amps, std::vector<double>(M, 1.0 / M));
}

void RunConfig::validate() const {
  if (!(amplitude > 0.0)) throw ConfigError("constellation.amplitude must be positive");
  if (M < 2) throw ConfigError("constellation.M must be at least 2");
  if (!phases.empty() && static_cast<int>(phases.size()) != M) {
    throw ConfigError("constellation.phases must list M values");
  }
  if (ranges.empty()) throw ConfigError("detector.range list is empty");
  for (double R : ranges) {
    if (!(R > 0.0)) throw ConfigError("detector.range entries must be positive");
  }
  if (bins < 1) throw ConfigError("detector.bins must be positive");
  if (loss_db.empty()) throw ConfigError("channel.loss_db list is empty");
  for (double l : loss_db) {
    if (!(l >= 0.0)) throw ConfigError("channel.loss_db entries must be >= 0");
  }
  if (!(excess_noise >= 0.0)) throw ConfigError("channel.excess_noise must be >= 0");
  if (rate_modes.empty()) throw ConfigError("mode.rate list is empty");
  if (!truncated && !finite_dim) throw ConfigError("mode.sdp list is empty");
  for (RateMode m : rate_modes) {
    if (m == RateMode::Finite && n_list.empty()) throw ConfigError("security.n list is empty");
  }
  for (double n : n_list) {
    if (!(n >= 1.0)) throw ConfigError("security.n entries must be >= 1");
  }
  try {
    security.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (aep_alphabet != 0 && aep_alphabet < 2) throw ConfigError("security.aep_alphabet must be >= 2");
  if (threads < 1) throw ConfigError("run.threads must be >= 1");
  if (!(tol > 0.0 && tol < 1e-2)) throw ConfigError("solver.tol must lie in (0, 1e-2)");
  for (int d : dims) {
    if (d < 0) throw ConfigError("mode.dims entries must be positive or 'auto'");
  }
}

RunConfig parse_config(std::istream& is) {
  RunConfig c;
  c.dims = {0};
  using Setter = std::function<void(const std::string&, int)>;
  const std::map<std::string, Setter> keys = {
      {"constellation.amplitude", [&](auto& v, int l) { c.amplitude = to_double(v, l); }},
      {"constellation.M", [&](auto& v, int l) { c.M = static_cast<int>(to_int(v, l)); }},
      {"constellation.phases", [&](auto& v, int l) { c.phases = double_list(v, l); }},
      {"detector.range", [&](auto& v, int l) { c.ranges = double_list(v, l); }},
      {"detector.bins", [&](auto& v, int l) { c.bins = static_cast<int>(to_int(v, l)); }},
      {"channel.loss_db",
       [&](auto& v, int l) {
         c.loss_db = v.empty() ? std::vector<double>{} : double_list(v, l);
       }},
      {"channel.excess_noise", [&](auto& v, int l) { c.excess_noise = to_double(v, l); }},
      {"security.n",
       [&](auto& v, int l) { c.n_list = v.empty() ? std::vector<double>{} : double_list(v, l); }},
      {"security.xi", [&](auto& v, int l) { c.security.xi = to_double(v, l); }},
      {"security.eps_s", [&](auto& v, int l) { c.security.eps_s = to_double(v, l); }},
      {"security.eps_h", [&](auto& v, int l) { c.security.eps_h = to_double(v, l); }},
      {"security.eps_PE", [&](auto& v, int l) { c.security.eps_PE = to_double(v, l); }},
      {"security.aep_alphabet",
       [&](auto& v, int l) { c.aep_alphabet = static_cast<int>(to_int(v, l)); }},
      {"mode.rate",
       [&](auto& v, int l) {
         c.rate_modes.clear();
         for (const auto& t : split_list(v)) {
           if (t == "asymptotic") c.rate_modes.push_back(RateMode::Asymptotic);
           else if (t == "finite") c.rate_modes.push_back(RateMode::Finite);
           else throw ConfigError("unknown rate mode '" + t + "'", l);
         }
       }},
      {"mode.sdp",
       [&](auto& v, int l) {
         c.truncated = c.finite_dim = false;
         for (const auto& t : split_list(v)) {
           if (t == "truncated") c.truncated = true;
           else if (t == "finite-dim") c.finite_dim = true;
           else throw ConfigError("unknown SDP mode '" + t + "'", l);
         }
       }},
      {"mode.dims",
       [&](auto& v, int l) {
         c.dims.clear();
         for (const auto& t : split_list(v)) {
           if (t == "auto") c.dims.push_back(0);
           else c.dims.push_back(static_cast<int>(to_int(t, l)));
         }
       }},
      {"entropy.bottom_symbol", [&](auto& v, int l) { c.bottom_symbol = to_bool(v, l); }},
      {"estimates.source",
       [&](auto& v, int l) {
         if (v == "expected") c.estimates = EstimateSource::Expected;
         else if (v == "monte-carlo") c.estimates = EstimateSource::MonteCarlo;
         else throw ConfigError("unknown estimate source '" + v + "'", l);
       }},
      {"estimates.rounds",
       [&](auto& v, int l) { c.mc_rounds = static_cast<std::uint64_t>(to_int(v, l)); }},
      {"run.seed", [&](auto& v, int l) { c.seed = static_cast<std::uint64_t>(to_int(v, l)); }},
      {"run.threads", [&](auto& v, int l) { c.threads = static_cast<int>(to_int(v, l)); }},
      {"solver.tol", [&](auto& v, int l) { c.tol = to_double(v, l); }},
      {"output.path", [&](auto& v, int) { c.output = v; }},
  };
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) throw ConfigError("unknown key '" + key + "'", line);
    it->second(val, line);
  }
  c.validate();
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_config(ss);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(f);
}

}  // namespace dmqkd
