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
#include <sstream>

#include "dmqkd/config.hpp"
#include "dmqkd/error.hpp"
#include "dmqkd/sweep.hpp"

namespace dmqkd {
namespace {

const char* kSmall = R"(# cheap setting
constellation.amplitude = 0.5
detector.range = 2
detector.bins = 8
channel.loss_db = 0, 3
channel.excess_noise = 0.01
security.n = 1e10, 1e12
mode.rate = asymptotic, finite
mode.sdp = truncated, finite-dim
mode.dims = auto, 12
)";

int error_line(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

TEST(Config, ParsesKeysAndLists) {
  const RunConfig c = parse_config_text(kSmall);
  EXPECT_EQ(c.amplitude, 0.5);
  EXPECT_EQ(c.ranges, std::vector<double>{2.0});
  EXPECT_EQ(c.bins, 8);
  EXPECT_EQ(c.loss_db, (std::vector<double>{0.0, 3.0}));
  EXPECT_EQ(c.excess_noise, 0.01);
  EXPECT_EQ(c.n_list, (std::vector<double>{1e10, 1e12}));
  EXPECT_EQ(c.rate_modes.size(), 2u);
  EXPECT_TRUE(c.truncated);
  EXPECT_TRUE(c.finite_dim);
  EXPECT_EQ(c.dims, (std::vector<int>{0, 12}));
  EXPECT_TRUE(c.constellation().is_qpsk());
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("channel.loss_db = 0\nbogus.key = 3\n"), 2);
  EXPECT_EQ(error_line("channel.loss_db = 0\n\n# c\ndetector.range 7\n"), 4);
  EXPECT_EQ(error_line("detector.bins = sixteen\nchannel.loss_db = 0\n"), 1);
  EXPECT_EQ(error_line("channel.loss_db = 0, , 2\n"), 1);
  EXPECT_EQ(error_line("channel.loss_db = 0\nmode.rate = sometimes\n"), 2);
  EXPECT_EQ(error_line("channel.loss_db = 0\nestimates.source = oracle\n"), 2);
}

TEST(Config, SemanticErrors) {
  EXPECT_THROW(parse_config_text("detector.range = 7\n"), ConfigError);  // no loss list
  EXPECT_THROW(parse_config_text("channel.loss_db = -1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("channel.loss_db = 0\nsecurity.xi = 1.5\n"), ConfigError);
  EXPECT_THROW(parse_config_text("channel.loss_db = 0\nrun.threads = 0\n"), ConfigError);
  EXPECT_THROW(parse_config_file("/nonexistent/x.conf"), ConfigError);
}

TEST(Config, ShippedConfigsParse) {
  for (const char* f : {"fig1_asymptotic.conf", "fig2_finite.conf", "fig3_point.conf"}) {
    EXPECT_NO_THROW(parse_config_file(std::string(DMQKD_SOURCE_DIR) + "/configs/" + f)) << f;
  }
}

TEST(Sweep, RequestOrder) {
  const RunConfig c = parse_config_text(kSmall);
  const auto reqs = expand_requests(c, 2.0);
  // 2 losses x (2 truncated dims + finite-dim) x (1 asymptotic + 2 finite n).
  ASSERT_EQ(reqs.size(), 18u);
  EXPECT_EQ(reqs[0].loss_db, 0.0);
  EXPECT_EQ(reqs[0].sdp_mode, SdpMode::InfiniteTruncated);
  EXPECT_EQ(reqs[0].dim, 9);
  EXPECT_EQ(reqs[0].rate_mode, RateMode::Asymptotic);
  EXPECT_EQ(reqs[1].rate_mode, RateMode::Finite);
  EXPECT_EQ(reqs[1].n, 1e10);
  EXPECT_EQ(reqs[2].n, 1e12);
  EXPECT_EQ(reqs[3].dim, 12);
  EXPECT_EQ(reqs[6].sdp_mode, SdpMode::FiniteDim);
  EXPECT_EQ(reqs[6].dim, 9);
  EXPECT_EQ(reqs[9].loss_db, 3.0);
  EXPECT_EQ(mode_label(reqs[1]), "finite/truncated@9");
  EXPECT_EQ(mode_label(reqs[6]), "asymptotic/finite-dim");
}

class SmallSweep : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    res_ = new SweepResult(run_sweep(parse_config_text(kSmall)));
  }
  static void TearDownTestSuite() { delete res_; }
  static SweepResult* res_;
};
SweepResult* SmallSweep::res_ = nullptr;

TEST_F(SmallSweep, CsvShape) {
  std::ostringstream os;
  write_csv(os, *res_);
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), kCsvHeader);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 19);
  const std::string row = s.substr(s.find('\n') + 1, s.find('\n', s.find('\n') + 1) - s.find('\n') - 1);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 22);
  EXPECT_EQ(row.rfind("0,1,inf,asymptotic/truncated@9,2,8,", 0), 0u) << row;
}

TEST_F(SmallSweep, RowsAreConsistent) {
  ASSERT_EQ(res_->rows.size(), 18u);
  EXPECT_FALSE(res_->any_numerical_failure);
  for (const auto& r : res_->rows) {
    EXPECT_NE(r.rate.status, RateStatus::Aborted) << r.rate.message;
    EXPECT_GE(r.gammaB, 0.5);
    EXPECT_LE(r.rate.r_n, r.rate.r_inf + 1e-12);
    EXPECT_NEAR(r.eta, std::pow(10.0, -r.req.loss_db / 10), 1e-15);
  }
  // Same setting, larger n: the finite rate does not drop.
  EXPECT_GE(res_->rows[2].rate.r_n, res_->rows[1].rate.r_n);
  // Feasible sets grow with the program dimension. At R = 2 the optimum still
  // moves between dims 9 and 12, so only the direction is fixed.
  EXPECT_GE(res_->rows[3].gammaB, res_->rows[0].gammaB - 1e-8);
  EXPECT_LE(res_->rows[3].gammaAB, res_->rows[0].gammaAB + 1e-8);
}

TEST_F(SmallSweep, OutputIsReproducible) {
  RunConfig c = parse_config_text(kSmall);
  c.threads = 3;
  const SweepResult again = run_sweep(c);
  std::ostringstream a, b;
  write_csv(a, *res_, false);
  write_csv(b, again, false);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream sum;
  write_summary(sum, *res_);
  EXPECT_FALSE(sum.str().empty());
}

TEST(Sweep, MonteCarloEstimatesFollowSeed) {
  const std::string base = std::string(kSmall) +
                           "estimates.source = monte-carlo\nestimates.rounds = 20000\n"
                           "mode.rate = finite\nmode.sdp = finite-dim\nchannel.loss_db = 0\n"
                           "security.n = 1e10\n";
  const std::string a = base + "run.seed = 4\n", b = base + "run.seed = 5\n";
  std::ostringstream o1, o2, o3;
  write_csv(o1, run_sweep(parse_config_text(a)), false);
  write_csv(o2, run_sweep(parse_config_text(a)), false);
  write_csv(o3, run_sweep(parse_config_text(b)), false);
  EXPECT_EQ(o1.str(), o2.str());
  EXPECT_NE(o1.str(), o3.str());
}

}  // namespace
}  // namespace dmqkd
