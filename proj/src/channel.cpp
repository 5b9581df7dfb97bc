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

#include "dmqkd/channel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <thread>

#include "dmqkd/error.hpp"
#include "dmqkd/rng.hpp"

namespace dmqkd {
namespace {

double axis_mean(const ChannelModel& ch, const Constellation& con, int x, Axis axis) {
  const cplx a = con.amplitudes.at(x);
  const double comp = (axis == Axis::Q ? a.real() : a.imag()) * std::numbers::sqrt2;
  return std::sqrt(ch.eta) * comp;
}

// Mass of N(mu, s^2) on [lo, hi], taking the erfc form on the far side of the
// mean so small bins keep their relative precision.
double interval_mass(double lo, double hi, double mu, double s) {
  const double k = 1.0 / (s * std::numbers::sqrt2);
  const double zl = (lo - mu) * k;
  const double zh = (hi - mu) * k;
  if (zl > 0.0) return 0.5 * (std::erfc(zl) - std::erfc(zh));
  if (zh < 0.0) return 0.5 * (std::erfc(-zh) - std::erfc(-zl));
  return 0.5 * (std::erf(zh) - std::erf(zl));
}

void check_x(int x, const Constellation& con) {
  if (x < 0 || x >= con.M()) throw InvalidArgument("input index out of range");
}

constexpr std::uint64_t kChunk = 1u << 16;

}  // namespace

ChannelModel::ChannelModel(double transmissivity, double excess_noise)
    : eta(transmissivity), u(excess_noise) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("transmissivity must lie in [0,1]");
  if (!(u >= 0.0) || !std::isfinite(u)) throw InvalidArgument("excess noise must be >= 0");
}

ChannelModel ChannelModel::from_loss_db(double loss_db, double excess_noise) {
  if (!(loss_db >= 0.0) || !std::isfinite(loss_db)) {
    throw InvalidArgument("loss in dB must be non-negative");
  }
  return ChannelModel(std::pow(10.0, -loss_db / 10.0), excess_noise);
}

double bin_prob_1d(int j, int x, const ChannelModel& ch, const DetectorModel& det,
                   const Constellation& con, Axis axis) {
  check_x(x, con);
  if (j < 1 || j > det.d) throw InvalidArgument("bin index out of range");
  return interval_mass(det.lo(j), det.hi(j), axis_mean(ch, con, x, axis),
                       std::sqrt(ch.u + 1.0));
}

double out_of_range_1d(int x, const ChannelModel& ch, const DetectorModel& det,
                       const Constellation& con, Axis axis) {
  check_x(x, con);
  const double mu = axis_mean(ch, con, x, axis);
  const double k = 1.0 / (std::sqrt(ch.u + 1.0) * std::numbers::sqrt2);
  return 0.5 * std::erfc((det.R - mu) * k) + 0.5 * std::erfc((det.R + mu) * k);
}

ChannelStats expected_stats(const ChannelModel& ch, const DetectorModel& det,
                            const Constellation& con) {
  const int M = con.M();
  const int d = det.d;
  ChannelStats st;
  st.bin_probs.resize(M, d * d);
  for (int x = 0; x < M; ++x) {
    std::vector<double> pq(d), pp(d);
    for (int j = 1; j <= d; ++j) {
      pq[j - 1] = bin_prob_1d(j, x, ch, det, con, Axis::Q);
      pp[j - 1] = bin_prob_1d(j, x, ch, det, con, Axis::P);
    }
    const double qx = std::numbers::sqrt2 * con.amplitudes[x].real();
    const double px = std::numbers::sqrt2 * con.amplitudes[x].imag();
    double vx = 0.0, cx = 0.0;
    for (int j = 1; j <= d; ++j) {
      const double qj = det.center(j);
      for (int k = 1; k <= d; ++k) {
        const double pk = det.center(k);
        const double P = pq[j - 1] * pp[k - 1];
        st.bin_probs(x, (j - 1) * d + (k - 1)) = P;
        vx += 0.5 * (qj * qj + pk * pk) * P;
        cx += 0.5 * (qx * qj + px * pk) * P;
      }
    }
    const double oq = out_of_range_1d(x, ch, det, con, Axis::Q);
    const double op = out_of_range_1d(x, ch, det, con, Axis::P);
    st.v += con.probs[x] * vx;
    st.c += con.probs[x] * cx;
    st.P0 += con.probs[x] * (oq + op - oq * op);
  }
  return st;
}

DiscreteJoint discrete_joint(const ChannelModel& ch, const DetectorModel& det,
                             const Constellation& con) {
  DiscreteJoint dj;
  dj.cond = expected_stats(ch, det, con).bin_probs;
  dj.priors = con.probs;
  return dj;
}

SampleResult sample_records(std::uint64_t n, std::uint64_t seed, const ChannelModel& ch,
                            const DetectorModel& det, const Constellation& con,
                            const SampleOptions& opt) {
  if (n == 0) throw InvalidArgument("sample_records: need at least one round");
  const int M = con.M();
  const int d = det.d;
  const int K = d * d;
  SampleResult res;
  res.stats = expected_stats(ch, det, con);
  if (opt.keep_records) res.records.resize(n);

  std::vector<double> cdf(M);
  std::partial_sum(con.probs.begin(), con.probs.end(), cdf.begin());
  std::vector<double> mq(M), mp(M), qx(M), px(M);
  for (int x = 0; x < M; ++x) {
    mq[x] = axis_mean(ch, con, x, Axis::Q);
    mp[x] = axis_mean(ch, con, x, Axis::P);
    qx[x] = std::numbers::sqrt2 * con.amplitudes[x].real();
    px[x] = std::numbers::sqrt2 * con.amplitudes[x].imag();
  }
  const double sd = std::sqrt(ch.u + 1.0);
  const CounterRng rng(seed, opt.stream);

  const std::uint64_t nchunks = (n + kChunk - 1) / kChunk;
  struct Partial {
    double vsum = 0.0, csum = 0.0;
    std::uint64_t out = 0;
    std::vector<std::uint64_t> counts;
  };
  std::vector<Partial> parts(nchunks);
  std::atomic<std::uint64_t> next{0};

  auto work = [&]() {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      Partial& part = parts[c];
      part.counts.assign(static_cast<std::size_t>(M) * (K + 1), 0);
      const std::uint64_t end = std::min(n, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) {
        const auto w0 = rng.words(i, 0);
        const auto w1 = rng.words(i, 1);
        const double ux = CounterRng::to_unit(w0[0], w0[1]);
        int x = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), ux) - cdf.begin());
        x = std::min(x, M - 1);
        const auto z = box_muller(CounterRng::to_unit(w0[2], w0[3]),
                                  CounterRng::to_unit(w1[0], w1[1]));
        const int j = det.digitize(mq[x] + sd * z[0]);
        const int k = det.digitize(mp[x] + sd * z[1]);
        Record r;
        r.x = static_cast<std::uint32_t>(x);
        if (j == 0 || k == 0) {
          r.S = 1;
          ++part.out;
          ++part.counts[static_cast<std::size_t>(x) * (K + 1) + K];
        } else {
          r.j = static_cast<std::uint16_t>(j);
          r.k = static_cast<std::uint16_t>(k);
          const double qj = det.center(j), pk = det.center(k);
          part.vsum += 0.5 * (qj * qj + pk * pk);
          part.csum += 0.5 * (qx[x] * qj + px[x] * pk);
          ++part.counts[static_cast<std::size_t>(x) * (K + 1) + (j - 1) * d + (k - 1)];
        }
        if (opt.keep_records) res.records[i] = r;
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(opt.threads, static_cast<int>(nchunks)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  double vsum = 0.0, csum = 0.0;
  std::uint64_t out = 0;
  res.counts.setZero(M, K + 1);
  for (const auto& part : parts) {
    vsum += part.vsum;
    csum += part.csum;
    out += part.out;
    for (int x = 0; x < M; ++x) {
      for (int b = 0; b <= K; ++b) {
        res.counts(x, b) += part.counts[static_cast<std::size_t>(x) * (K + 1) + b];
      }
    }
  }
  const double nd = static_cast<double>(n);
  const double denom =
      opt.policy == OutOfRangePolicy::ZeroContribution ? nd : static_cast<double>(n - out);
  res.stats.n_samples = n;
  res.stats.v_hat = denom > 0.0 ? vsum / denom : 0.0;
  res.stats.c_hat = denom > 0.0 ? csum / denom : 0.0;
  res.stats.P0_hat = static_cast<double>(out) / nd;
  return res;
}

void write_records_csv(std::ostream& os, const std::vector<Record>& records) {
  os << "i,x,j,k,S\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Record& r = records[i];
    os << i << ',' << r.x << ',' << r.j << ',' << r.k << ',' << int(r.S) << '\n';
  }
}

DigitizedSampler::DigitizedSampler(const ChannelModel& ch, const DetectorModel& det,
                                   const Constellation& con) {
  const ChannelStats st = expected_stats(ch, det, con);
  const int M = con.M();
  const int d = det.d;
  std::vector<double> p;
  for (int x = 0; x < M; ++x) {
    const double qx = std::numbers::sqrt2 * con.amplitudes[x].real();
    const double px = std::numbers::sqrt2 * con.amplitudes[x].imag();
    double in = 0.0;
    for (int j = 1; j <= d; ++j) {
      for (int k = 1; k <= d; ++k) {
        const double P = st.bin_probs(x, (j - 1) * d + (k - 1));
        in += P;
        p.push_back(con.probs[x] * P);
        const double qj = det.center(j), pk = det.center(k);
        vval_.push_back(0.5 * (qj * qj + pk * pk));
        cval_.push_back(0.5 * (qx * qj + px * pk));
        out_.push_back(0);
      }
    }
    p.push_back(con.probs[x] * std::max(0.0, 1.0 - in));
    vval_.push_back(0.0);
    cval_.push_back(0.0);
    out_.push_back(1);
  }
  // Vose alias construction.
  const std::size_t n = p.size();
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = p[i] * n / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (auto i : large) prob_[i] = 1.0, alias_[i] = i;
  for (auto i : small) prob_[i] = 1.0, alias_[i] = i;
}

DigitizedSampler::Estimates DigitizedSampler::block(std::uint64_t n, std::uint64_t seed,
                                                    std::uint64_t trial) const {
  if (n == 0) throw InvalidArgument("DigitizedSampler: need at least one round");
  const CounterRng rng(seed, trial);
  const std::uint64_t K = prob_.size();
  double vs = 0.0, cs = 0.0;
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto w = rng.words(i, 0);
    std::uint64_t idx = (static_cast<std::uint64_t>(w[0]) * K) >> 32;
    if (CounterRng::to_unit(w[1], w[2]) >= prob_[idx]) idx = alias_[idx];
    vs += vval_[idx];
    cs += cval_[idx];
    out += out_[idx];
  }
  const double nd = static_cast<double>(n);
  return {vs / nd, cs / nd, static_cast<double>(out) / nd};
}

}  // namespace dmqkd
