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

#include "dmqkd/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "dmqkd/error.hpp"
#include "dmqkd/gaussian_bound.hpp"
#include "dmqkd/infotheory.hpp"

namespace dmqkd {

std::string mode_label(const PointRequest& r) {
  std::string s = to_string(r.rate_mode);
  s += '/';
  if (r.sdp_mode == SdpMode::FiniteDim) {
    s += "finite-dim";
  } else {
    s += "truncated@" + std::to_string(r.dim);
  }
  return s;
}

ChannelStats point_stats(const PointContext& ctx, const PointRequest& req) {
  const ChannelModel ch = ChannelModel::from_loss_db(req.loss_db, ctx.excess_noise);
  if (req.rate_mode == RateMode::Finite && ctx.estimates == EstimateSource::MonteCarlo) {
    const double rounds = ctx.mc_rounds > 0 ? double(ctx.mc_rounds) : req.n;
    if (rounds > 1e9) throw InvalidArgument("Monte Carlo estimates need at most 1e9 rounds");
    SampleOptions opt;
    opt.keep_records = false;
    opt.stream = ctx.stream;
    return sample_records(static_cast<std::uint64_t>(rounds), ctx.seed, ch, ctx.det, ctx.con,
                          opt)
        .stats;
  }
  ChannelStats st = expected_stats(ch, ctx.det, ctx.con);
  st.v_hat = st.v;
  st.c_hat = st.c;
  st.P0_hat = st.P0;
  return st;
}

SdpParams sdp_params_for(const PointContext& ctx, const PointRequest& req,
                         const ChannelStats& stats, Deltas* deltas_out) {
  SdpParams prm;
  prm.cnorm = ctx.con.cnorm_bound(ctx.det.R);
  if (req.rate_mode == RateMode::Asymptotic) {
    prm.v = stats.v;
    prm.c = stats.c;
    prm.P0 = stats.P0;
    if (deltas_out) *deltas_out = {};
    return prm;
  }
  SecurityParams sp = ctx.security;
  sp.n = req.n;
  const Deltas dl =
      confidence_deltas(stats.v_hat, stats.c_hat, stats.P0_hat, sp, ctx.det, ctx.con);
  prm.v = stats.v_hat + dl.v;
  prm.c = stats.c_hat - dl.c;
  prm.P0 = stats.P0_hat + dl.P;
  if (deltas_out) *deltas_out = dl;
  return prm;
}

std::pair<SdpProblem, SdpProblem> point_problems(const PointContext& ctx,
                                                 const PointRequest& req,
                                                 const FockOperatorSet& ops) {
  if (ops.nmax != req.dim) throw InvalidArgument("operator dimension does not match request");
  const ChannelStats st = point_stats(ctx, req);
  const SdpParams prm = sdp_params_for(ctx, req, st);
  return {build_gammaB_primal(ops, prm, req.sdp_mode),
          build_gammaAB_primal(ops, ctx.ebr, prm, req.sdp_mode)};
}

PointResult evaluate_point(const PointContext& ctx, const PointRequest& req,
                           const FockOperatorSet& ops) {
  const auto t0 = std::chrono::steady_clock::now();
  PointResult res;
  res.req = req;
  res.R = ctx.det.R;
  res.d = ctx.det.d;
  res.rate.status = RateStatus::Aborted;
  res.rate.eps_prime = ctx.security.eps_prime();
  try {
    const ChannelModel ch = ChannelModel::from_loss_db(req.loss_db, ctx.excess_noise);
    res.eta = ch.eta;
    if (ops.nmax != req.dim) throw InvalidArgument("operator dimension does not match request");
    const ChannelStats st = point_stats(ctx, req);
    Deltas dl;
    const SdpParams prm = sdp_params_for(ctx, req, st, &dl);
    res.rate.deltas = dl;
    res.P0_used = prm.P0;
    const CutoffBudget budget = cutoff_budget(prm.P0, ctx.det.R, ctx.det.d);

    const SdpSolution solB = solve(build_gammaB_primal(ops, prm, req.sdp_mode), ctx.solver);
    const SdpSolution solAB =
        solve(build_gammaAB_primal(ops, ctx.ebr, prm, req.sdp_mode), ctx.solver);
    res.sdp_gap_B = solB.gap;
    res.sdp_gap_AB = solAB.gap;
    const GammaBounds gb = gamma_bounds(solB, solAB, prm.P0, req.sdp_mode);
    res.gammaA = ctx.ebr.gammaA / budget.floor;
    res.gammaB = gb.gammaB_upper;
    res.gammaAB = gb.gammaAB_lower;
    const double fchi = f_chi(res.gammaA, res.gammaB, res.gammaAB);

    const DiscreteJoint dj = discrete_joint(ch, ctx.det, ctx.con);
    const MutualInformation mi =
        mutual_information(ctx.bottom_symbol ? dj.with_deficit_symbol() : dj);

    SecurityParams sp = ctx.security;
    if (req.rate_mode == RateMode::Finite) sp.n = req.n;
    RateInputs in;
    in.I_xy = mi.I;
    in.f_chi = fchi;
    in.delta_shirokov = budget.delta;
    in.aep_alphabet = ctx.aep_alphabet;
    const Deltas keep = res.rate.deltas;
    res.rate = key_rate(req.rate_mode, in, sp);
    res.rate.deltas = keep;
    res.numerical_failure = res.rate.status == RateStatus::Aborted;
  } catch (const NumericalError& e) {
    res.rate.status = RateStatus::Aborted;
    res.rate.message = e.what();
    res.numerical_failure = true;
  } catch (const Error& e) {
    res.rate.status = RateStatus::Aborted;
    res.rate.message = e.what();
  }
  res.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace dmqkd
