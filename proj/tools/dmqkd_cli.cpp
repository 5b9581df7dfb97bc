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

// Command-line front end. Talks to the library only through dmqkd.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dmqkd/dmqkd.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int report(dmqkd_status s) {
  if (s == DMQKD_OK) return kExitOk;
  std::cerr << "dmqkd: " << dmqkd_status_string(s) << ": " << dmqkd_last_error() << '\n';
  switch (s) {
    case DMQKD_ERR_CONFIG: return kExitConfig;
    case DMQKD_ERR_NUMERICAL: return kExitNumerical;
    default: return kExitOther;
  }
}

struct ConfigHandle {
  dmqkd_config* h = nullptr;
  ~ConfigHandle() { dmqkd_config_free(h); }
};

struct Overrides {
  std::string mode;
  int threads = 0;
  long long seed = -1;
  double tol = 0.0;
};

dmqkd_status load(const std::string& path, const Overrides& ov, ConfigHandle& cfg) {
  dmqkd_status s = dmqkd_config_load_file(path.c_str(), &cfg.h);
  if (s != DMQKD_OK) return s;
  if (!ov.mode.empty() && (s = dmqkd_config_set_rate_mode(cfg.h, ov.mode.c_str())) != DMQKD_OK) {
    return s;
  }
  if (ov.threads > 0 && (s = dmqkd_config_set_threads(cfg.h, ov.threads)) != DMQKD_OK) return s;
  if (ov.seed >= 0 && (s = dmqkd_config_set_seed(cfg.h, uint64_t(ov.seed))) != DMQKD_OK) return s;
  if (ov.tol > 0.0 && (s = dmqkd_config_set_tol(cfg.h, ov.tol)) != DMQKD_OK) return s;
  return DMQKD_OK;
}

int run_sweep(const std::string& config, std::string output, const Overrides& ov,
              bool no_runtime, bool quiet) {
  ConfigHandle cfg;
  if (int rc = report(load(config, ov, cfg))) return rc;
  if (output.empty()) output = dmqkd_config_output_path(cfg.h);
  dmqkd_sweep_result* res = nullptr;
  if (int rc = report(dmqkd_sweep_run(cfg.h, &res))) return rc;
  char* csv = nullptr;
  char* summary = nullptr;
  int rc = report(dmqkd_sweep_csv(res, no_runtime ? 0 : 1, &csv));
  if (rc == kExitOk) rc = report(dmqkd_sweep_summary(res, &summary));
  if (rc == kExitOk) {
    if (output.empty() || output == "-") {
      std::cout << csv;
    } else {
      std::ofstream f(output);
      f << csv;
      if (!f) {
        std::cerr << "dmqkd: cannot write '" << output << "'\n";
        rc = kExitOther;
      }
    }
    if (!quiet) std::cerr << summary;
    if (rc == kExitOk && dmqkd_sweep_any_numerical_failure(res)) rc = kExitNumerical;
  }
  dmqkd_string_free(csv);
  dmqkd_string_free(summary);
  dmqkd_sweep_free(res);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Key-rate bounds for discrete-modulation CV-QKD with digitized heterodyne"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dmqkd_version());

  Overrides ov;
  std::string config, output;
  bool no_runtime = false, quiet = false;

  auto* sweep = app.add_subcommand("sweep", "Run a configured loss / block-size sweep to CSV");
  sweep->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("-o,--output", output, "CSV output path ('-' for stdout)");
  sweep->add_option("--mode", ov.mode, "Rate mode override")
      ->check(CLI::IsMember({"asymptotic", "finite", "both"}));
  sweep->add_option("--threads", ov.threads, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", ov.seed, "Seed override")->check(CLI::NonNegativeNumber);
  sweep->add_option("--tol", ov.tol, "SDP solver tolerance")->check(CLI::PositiveNumber);
  sweep->add_flag("--no-runtime", no_runtime, "Write 0 in the runtime_s column");
  sweep->add_flag("-q,--quiet", quiet, "No summary on stderr");

  double loss = 0.0;
  double rounds = 1e4;
  auto* records = app.add_subcommand("records", "Dump simulated per-round records as CSV");
  records->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  records->add_option("-o,--output", output, "Output path")->required();
  records->add_option("--loss", loss, "Channel loss in dB")->check(CLI::NonNegativeNumber);
  records->add_option("--rounds", rounds, "Number of rounds")->check(CLI::PositiveNumber);
  records->add_option("--seed", ov.seed, "Seed override")->check(CLI::NonNegativeNumber);
  records->add_option("--threads", ov.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string rate_mode = "asymptotic", sdp_mode = "truncated", prefix;
  double n = 1e10;
  int dim = 0;
  auto* dump = app.add_subcommand("dump-sdp", "Write the two covariance programs of one point");
  dump->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  dump->add_option("--prefix", prefix, "Output prefix")->required();
  dump->add_option("--loss", loss, "Channel loss in dB")->check(CLI::NonNegativeNumber);
  dump->add_option("--mode", rate_mode, "Rate mode")
      ->check(CLI::IsMember({"asymptotic", "finite"}));
  dump->add_option("--n", n, "Block size (finite mode)")->check(CLI::PositiveNumber);
  dump->add_option("--sdp", sdp_mode, "SDP mode")
      ->check(CLI::IsMember({"truncated", "finite-dim"}));
  dump->add_option("--dim", dim, "Fock dimension (0: floor(2R^2)+1)");

  std::string problem;
  double tol = 0.0;
  auto* solve = app.add_subcommand("solve-sdp", "Solve a dumped program with the built-in solver");
  solve->add_option("problem", problem, "Problem file")->required()->check(CLI::ExistingFile);
  solve->add_option("--tol", tol, "Solver tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*sweep) return run_sweep(config, output, ov, no_runtime, quiet);
  if (*records) {
    ConfigHandle cfg;
    if (int rc = report(load(config, ov, cfg))) return rc;
    return report(dmqkd_records_write(cfg.h, loss, uint64_t(rounds), output.c_str()));
  }
  if (*dump) {
    ConfigHandle cfg;
    if (int rc = report(load(config, ov, cfg))) return rc;
    return report(dmqkd_dump_sdp(cfg.h, loss, rate_mode.c_str(), n, sdp_mode.c_str(), dim,
                                 prefix.c_str()));
  }
  if (*solve) {
    double value = 0.0, bound = 0.0, gap = 0.0;
    if (int rc = report(dmqkd_solve_sdp_file(problem.c_str(), tol, &value, &bound, &gap))) {
      return rc;
    }
    std::printf("value %.17g\nbound %.17g\ngap %.3e\n", value, bound, gap);
    return kExitOk;
  }
  return kExitOther;
}
