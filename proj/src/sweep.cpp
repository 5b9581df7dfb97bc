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

#include "dmqkd/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "dmqkd/error.hpp"

namespace dmqkd {
namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

int resolve_dim(int dim, double R) { return dim > 0 ? dim : static_cast<int>(std::floor(2 * R * R)) + 1; }

}  // namespace

const char* const kCsvHeader =
    "eta_db,eta,n,mode,R,d,I_xy,gammaB_bound,gammaAB_bound,f_chi,delta_shirokov,aep_term,"
    "hash_term,delta_v,delta_c,delta_P,P0_used,sdp_gap_B,sdp_gap_AB,rate_bits,status,"
    "eps_prime,runtime_s";

PointContext make_context(const RunConfig& cfg, double R) {
  PointContext ctx;
  ctx.con = cfg.constellation();
  ctx.det = DetectorModel(R, cfg.bins);
  ctx.ebr = eb_representation(ctx.con);
  ctx.security = cfg.security;
  ctx.excess_noise = cfg.excess_noise;
  ctx.aep_alphabet = cfg.aep_alphabet > 0 ? cfg.aep_alphabet : cfg.bins;
  ctx.bottom_symbol = cfg.bottom_symbol;
  ctx.estimates = cfg.estimates;
  ctx.mc_rounds = cfg.mc_rounds;
  ctx.seed = cfg.seed;
  ctx.solver.tol = cfg.tol;
  ctx.solver.keep_primal = false;
  return ctx;
}

std::vector<PointRequest> expand_requests(const RunConfig& cfg, double R) {
  const int N = static_cast<int>(std::floor(2 * R * R));
  std::vector<PointRequest> out;
  for (double loss : cfg.loss_db) {
    std::vector<std::pair<SdpMode, int>> sdp;
    if (cfg.truncated) {
      for (int d : cfg.dims) {
        const int dim = resolve_dim(d, R);
        if (dim < N + 1) {
          throw ConfigError("mode.dims entry " + std::to_string(dim) + " is below floor(2R^2)+1 = " +
                            std::to_string(N + 1));
        }
        sdp.emplace_back(SdpMode::InfiniteTruncated, dim);
      }
    }
    if (cfg.finite_dim) sdp.emplace_back(SdpMode::FiniteDim, N + 1);
    for (const auto& [mode, dim] : sdp) {
      for (RateMode rm : cfg.rate_modes) {
        PointRequest r;
        r.loss_db = loss;
        r.rate_mode = rm;
        r.sdp_mode = mode;
        r.dim = dim;
        if (rm == RateMode::Asymptotic) {
          out.push_back(r);
        } else {
          for (double n : cfg.n_list) {
            r.n = n;
            out.push_back(r);
          }
        }
      }
    }
  }
  return out;
}

SweepResult run_sweep(const RunConfig& cfg, const SweepProgress& progress) {
  cfg.validate();
  struct Job {
    std::size_t ctx;
    std::size_t loss_index;
    PointRequest req;
  };
  std::vector<PointContext> contexts;
  std::vector<Job> jobs;
  for (double R : cfg.ranges) {
    contexts.push_back(make_context(cfg, R));
    const auto reqs = expand_requests(cfg, R);
    for (const auto& r : reqs) {
      std::size_t li = 0;
      while (cfg.loss_db[li] != r.loss_db) ++li;
      jobs.push_back({contexts.size() - 1, li, r});
    }
  }

  std::map<std::pair<std::size_t, int>, std::unique_ptr<FockOperatorSet>> ops;
  for (const auto& j : jobs) ops[{j.ctx, j.req.dim}];
  std::vector<std::pair<std::pair<std::size_t, int>, std::unique_ptr<FockOperatorSet>*>> todo;
  for (auto& [k, v] : ops) todo.emplace_back(k, &v);
  parallel_for(todo.size(), cfg.threads, [&](std::size_t i) {
    const auto& [key, slot] = todo[i];
    *slot = std::make_unique<FockOperatorSet>(
        build_detector_operators(contexts[key.first].det, key.second));
  });

  SweepResult res;
  res.rows.resize(jobs.size());
  std::atomic<std::size_t> done{0};
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
    const Job& j = jobs[i];
    PointContext ctx = contexts[j.ctx];
    ctx.stream = (static_cast<std::uint64_t>(j.ctx) << 32) | j.loss_index;
    res.rows[i] = evaluate_point(ctx, j.req, *ops.at({j.ctx, j.req.dim}));
    const std::size_t k = ++done;
    if (progress) progress(k, jobs.size());
  });
  for (const auto& r : res.rows) res.any_numerical_failure |= r.numerical_failure;
  return res;
}

void write_csv(std::ostream& os, const SweepResult& res, bool with_runtime) {
  os << kCsvHeader << '\n';
  for (const auto& r : res.rows) {
    const bool fin = r.req.rate_mode == RateMode::Finite;
    char rt[32];
    std::snprintf(rt, sizeof rt, "%.3f", r.runtime_s);
    os << fmt(r.req.loss_db) << ',' << fmt(r.eta) << ',' << (fin ? fmt(r.req.n) : "inf") << ','
       << mode_label(r.req) << ',' << fmt(r.R) << ',' << r.d << ',' << fmt(r.rate.I_xy) << ','
       << fmt(r.gammaB) << ',' << fmt(r.gammaAB) << ',' << fmt(r.rate.f_chi) << ','
       << fmt(r.rate.delta_shirokov) << ',' << fmt(r.rate.aep_term) << ','
       << fmt(r.rate.hash_term) << ',' << fmt(r.rate.deltas.v) << ',' << fmt(r.rate.deltas.c)
       << ',' << fmt(r.rate.deltas.P) << ',' << fmt(r.P0_used) << ',' << fmt(r.sdp_gap_B) << ','
       << fmt(r.sdp_gap_AB) << ',' << fmt(r.rate.r_n) << ',' << to_string(r.rate.status) << ','
       << fmt(r.rate.eps_prime) << ',' << (with_runtime ? rt : "0") << '\n';
  }
}

void write_summary(std::ostream& os, const SweepResult& res) {
  std::size_t pos = 0, nonpos = 0, aborted = 0;
  for (const auto& r : res.rows) {
    switch (r.rate.status) {
      case RateStatus::Positive: ++pos; break;
      case RateStatus::Nonpositive: ++nonpos; break;
      case RateStatus::Aborted: ++aborted; break;
    }
  }
  os << res.rows.size() << " points: " << pos << " positive, " << nonpos << " nonpositive, "
     << aborted << " aborted\n";
  for (const auto& r : res.rows) {
    char line[256];
    std::snprintf(line, sizeof line, "  loss %5.2f dB  R %-4g %-24s n %-8s rate %+.6e  %s\n",
                  r.req.loss_db, r.R, mode_label(r.req).c_str(),
                  r.req.rate_mode == RateMode::Finite ? fmt(r.req.n).c_str() : "inf", r.rate.r_n,
                  to_string(r.rate.status));
    os << line;
    if (!r.rate.message.empty()) os << "    " << r.rate.message << '\n';
  }
}

}  // namespace dmqkd
