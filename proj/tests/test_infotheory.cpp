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

#include <gtest/gtest.h>

#include <cmath>

#include "dmqkd/channel.hpp"
#include "dmqkd/error.hpp"
#include "dmqkd/infotheory.hpp"

namespace dmqkd {
namespace {

DiscreteJoint make(std::vector<std::vector<double>> rows, std::vector<double> priors) {
  DiscreteJoint dj;
  dj.priors = std::move(priors);
  dj.cond.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t x = 0; x < rows.size(); ++x) {
    for (std::size_t y = 0; y < rows[x].size(); ++y) dj.cond(x, y) = rows[x][y];
  }
  return dj;
}

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

TEST(MutualInformation, SmallExamples) {
  EXPECT_NEAR(mutual_information(make({{1, 0}, {0, 1}}, {0.5, 0.5})).I, 1.0, 1e-15);
  const auto bsc = mutual_information(make({{0.9, 0.1}, {0.1, 0.9}}, {0.5, 0.5}));
  EXPECT_NEAR(bsc.I, 1 - h2(0.1), 1e-14);
  EXPECT_NEAR(bsc.H_Y, 1.0, 1e-15);
  EXPECT_NEAR(bsc.H_Y_given_X, h2(0.1), 1e-15);
  EXPECT_NEAR(mutual_information(make({{0.2, 0.8}, {0.2, 0.8}}, {0.3, 0.7})).I, 0.0, 1e-15);
}

TEST(MutualInformation, SingleSymbolCarriesNothing) {
  const auto mi = mutual_information(make({{0.9}, {0.9}, {0.9}, {0.9}}, {0.25, 0.25, 0.25, 0.25}));
  EXPECT_NEAR(mi.I, 0.0, 1e-15);
  EXPECT_NEAR(mi.H_Y, -0.9 * std::log2(0.9), 1e-15);
}

TEST(MutualInformation, Validation) {
  EXPECT_THROW(mutual_information(make({{-0.1, 1.1}}, {1.0})), InvalidArgument);
  EXPECT_THROW(mutual_information(make({{0.6, 0.6}}, {1.0})), InvalidArgument);
  EXPECT_THROW(mutual_information(make({{0.5, 0.5}}, {0.5, 0.5})), InvalidArgument);
}

TEST(MutualInformation, RelabelingInvariance) {
  const Constellation con = make_qpsk(0.5);
  const DiscreteJoint dj = discrete_joint(ChannelModel(0.8, 0.01), DetectorModel(4.0, 8), con);
  const double I = mutual_information(dj).I;
  DiscreteJoint perm = dj;
  for (Eigen::Index y = 0; y < dj.cond.cols(); ++y) {
    perm.cond.col(y) = dj.cond.col(dj.cond.cols() - 1 - y);
  }
  for (int x = 0; x < 4; ++x) perm.cond.row(x) = dj.cond.row((x + 1) % 4);
  EXPECT_NEAR(mutual_information(perm).I, I, 1e-13);
}

TEST(MutualInformation, BoundsOnQpskGrid) {
  const Constellation con = make_qpsk(0.5);
  for (double eta : {1.0, 0.5, 0.1}) {
    for (int d : {1, 2, 8, 16}) {
      const auto mi = mutual_information(discrete_joint(ChannelModel(eta, 0.001),
                                                        DetectorModel(7.0, d), con));
      EXPECT_GE(mi.I, -1e-12);
      EXPECT_LE(mi.I, std::min(2.0, 2 * std::log2(static_cast<double>(d))) + 1e-12);
    }
  }
}

TEST(MutualInformation, RefinementNeverDecreases) {
  const Constellation con = make_qpsk(0.5);
  for (double R : {1.5, 3.0, 7.0}) {
    for (double eta : {1.0, 0.3}) {
      const ChannelModel ch(eta, 0.02);
      for (int d : {2, 4, 8, 16}) {
        const double coarse =
            mutual_information(discrete_joint(ch, DetectorModel(R, d), con).with_deficit_symbol()).I;
        const double fine =
            mutual_information(discrete_joint(ch, DetectorModel(R, 2 * d), con).with_deficit_symbol()).I;
        EXPECT_GE(fine, coarse - 1e-13) << R << " " << eta << " " << d;
      }
    }
  }
}

TEST(MutualInformation, MatchesMonteCarloPlugIn) {
  const Constellation con = make_qpsk(0.5);
  const DetectorModel det(7.0, 16);
  const ChannelModel ch(1.0, 0.0);
  const double I = mutual_information(discrete_joint(ch, det, con)).I;
  SampleOptions opt;
  opt.threads = 8;
  opt.keep_records = false;
  const std::uint64_t n = 10000000;
  const SampleResult r = sample_records(n, 99, ch, det, con, opt);
  const int K = 256;
  std::vector<double> py(K, 0.0), px(4, 0.0);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < K; ++y) {
      py[y] += static_cast<double>(r.counts(x, y));
      px[x] += static_cast<double>(r.counts(x, y));
    }
  }
  // Plug-in I and its delta-method standard error.
  double m1 = 0, m2 = 0;
  const double nd = static_cast<double>(n);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < K; ++y) {
      const double c = static_cast<double>(r.counts(x, y));
      if (c == 0) continue;
      const double l = std::log2(c * nd / (px[x] * py[y]));
      m1 += c / nd * l;
      m2 += c / nd * l * l;
    }
  }
  const double se = std::sqrt((m2 - m1 * m1) / nd);
  EXPECT_LT(std::abs(m1 - I), 3 * se) << "plug-in " << m1 << " analytic " << I << " se " << se;
}

}  // namespace
}  // namespace dmqkd
