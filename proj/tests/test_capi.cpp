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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "dmqkd/dmqkd.h"

namespace {

const char* kSmall =
    "detector.range = 2\n"
    "detector.bins = 8\n"
    "channel.loss_db = 0, 2\n"
    "mode.rate = asymptotic, finite\n"
    "security.n = 1e12\n";

struct Cfg {
  dmqkd_config* h = nullptr;
  ~Cfg() { dmqkd_config_free(h); }
};
struct Res {
  dmqkd_sweep_result* h = nullptr;
  ~Res() { dmqkd_sweep_free(h); }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(dmqkd_version(), "0.1.0");
  EXPECT_STRNE(dmqkd_status_string(DMQKD_ERR_CONFIG), "");
  EXPECT_STRNE(dmqkd_status_string(DMQKD_OK), dmqkd_status_string(DMQKD_ERR_NUMERICAL));
}

TEST(CApi, ConfigErrorsReportLine) {
  Cfg c;
  EXPECT_EQ(dmqkd_config_load_string("channel.loss_db = 0\nnope = 1\n", &c.h), DMQKD_ERR_CONFIG);
  EXPECT_EQ(c.h, nullptr);
  EXPECT_EQ(dmqkd_last_error_line(), 2);
  EXPECT_NE(std::string(dmqkd_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(dmqkd_config_load_file("/nonexistent.conf", &c.h), DMQKD_ERR_IO);
  EXPECT_EQ(dmqkd_config_load_string(nullptr, &c.h), DMQKD_ERR_INVALID_ARGUMENT);
}

TEST(CApi, Setters) {
  Cfg c;
  ASSERT_EQ(dmqkd_config_load_string(kSmall, &c.h), DMQKD_OK);
  EXPECT_EQ(dmqkd_config_set_threads(c.h, 0), DMQKD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dmqkd_config_set_threads(c.h, 2), DMQKD_OK);
  EXPECT_EQ(dmqkd_config_set_tol(c.h, -1.0), DMQKD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dmqkd_config_set_seed(c.h, 9), DMQKD_OK);
  EXPECT_EQ(dmqkd_config_set_rate_mode(c.h, "sideways"), DMQKD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dmqkd_config_set_rate_mode(c.h, "finite"), DMQKD_OK);
  EXPECT_STREQ(dmqkd_config_output_path(c.h), "");
}

TEST(CApi, SweepRoundTrip) {
  Cfg c;
  ASSERT_EQ(dmqkd_config_load_string(kSmall, &c.h), DMQKD_OK);
  Res r;
  ASSERT_EQ(dmqkd_sweep_run(c.h, &r.h), DMQKD_OK);
  ASSERT_EQ(dmqkd_sweep_rows(r.h), 4u);
  EXPECT_EQ(dmqkd_sweep_any_numerical_failure(r.h), 0);
  double rate = 0;
  const char* st = nullptr;
  ASSERT_EQ(dmqkd_sweep_row_rate(r.h, 0, &rate), DMQKD_OK);
  ASSERT_EQ(dmqkd_sweep_row_status(r.h, 0, &st), DMQKD_OK);
  EXPECT_TRUE(std::string(st) == "positive" || std::string(st) == "nonpositive");
  EXPECT_EQ(std::string(st) == "positive", rate > 0);
  EXPECT_EQ(dmqkd_sweep_row_rate(r.h, 4, &rate), DMQKD_ERR_INVALID_ARGUMENT);
  char* csv = nullptr;
  ASSERT_EQ(dmqkd_sweep_csv(r.h, 0, &csv), DMQKD_OK);
  const std::string s(csv);
  dmqkd_string_free(csv);
  EXPECT_EQ(s.rfind("eta_db,eta,n,mode,", 0), 0u);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 5);
  char* sum = nullptr;
  ASSERT_EQ(dmqkd_sweep_summary(r.h, &sum), DMQKD_OK);
  EXPECT_NE(std::string(sum).find("4 points"), std::string::npos);
  dmqkd_string_free(sum);
}

TEST(CApi, RecordsAndProblemFiles) {
  Cfg c;
  ASSERT_EQ(dmqkd_config_load_string(kSmall, &c.h), DMQKD_OK);
  const std::string dir = ::testing::TempDir();
  const std::string rec = dir + "/capi_records.csv";
  ASSERT_EQ(dmqkd_records_write(c.h, 0.0, 100, rec.c_str()), DMQKD_OK);
  const std::string text = slurp(rec);
  EXPECT_EQ(text.rfind("i,x,j,k,S\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 101);
  EXPECT_EQ(dmqkd_records_write(c.h, 0.0, 100, "/nonexistent/dir/x.csv"), DMQKD_ERR_IO);

  const std::string prefix = dir + "/capi_point";
  ASSERT_EQ(dmqkd_dump_sdp(c.h, 0.0, "asymptotic", 0, "finite-dim", 0, prefix.c_str()), DMQKD_OK);
  double value = 0, bound = 0, gap = 1;
  ASSERT_EQ(dmqkd_solve_sdp_file((prefix + "_gammaB.sdp").c_str(), 1e-9, &value, &bound, &gap),
            DMQKD_OK);
  EXPECT_GE(bound, value - 1e-9);
  EXPECT_LT(gap, 1e-7);
  ASSERT_EQ(dmqkd_solve_sdp_file((prefix + "_gammaAB.sdp").c_str(), 1e-9, &value, &bound, nullptr),
            DMQKD_OK);
  EXPECT_LE(bound, value + 1e-9);
  EXPECT_EQ(dmqkd_dump_sdp(c.h, 0.0, "asymptotic", 0, "other", 0, prefix.c_str()),
            DMQKD_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(dmqkd_solve_sdp_file((dir + "/missing.sdp").c_str(), 1e-9, &value, nullptr, nullptr),
            DMQKD_ERR_IO);
}

}  // namespace
