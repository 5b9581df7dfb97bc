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

#include "dmqkd/dmqkd.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "dmqkd/channel.hpp"
#include "dmqkd/config.hpp"
#include "dmqkd/error.hpp"
#include "dmqkd/sdp.hpp"
#include "dmqkd/sweep.hpp"

struct dmqkd_config {
  dmqkd::RunConfig cfg;
};

struct dmqkd_sweep_result {
  dmqkd::SweepResult res;
};

namespace {

thread_local std::string g_error;
thread_local int g_error_line = 0;

dmqkd_status fail(dmqkd_status s, const std::string& msg, int line = 0) {
  g_error = msg;
  g_error_line = line;
  return s;
}

template <class F>
dmqkd_status guarded(F&& f) {
  g_error.clear();
  g_error_line = 0;
  try {
    return f();
  } catch (const dmqkd::ConfigError& e) {
    return fail(DMQKD_ERR_CONFIG, e.what(), e.line());
  } catch (const dmqkd::InvalidArgument& e) {
    return fail(DMQKD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const dmqkd::NumericalError& e) {
    return fail(DMQKD_ERR_NUMERICAL, e.what());
  } catch (const std::exception& e) {
    return fail(DMQKD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DMQKD_ERR_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

dmqkd_status load(std::istream& is, dmqkd_config** out) {
  auto h = new dmqkd_config{dmqkd::parse_config(is)};
  *out = h;
  return DMQKD_OK;
}

}  // namespace

extern "C" {

const char* dmqkd_version(void) { return "0.1.0"; }
const char* dmqkd_last_error(void) { return g_error.c_str(); }
int dmqkd_last_error_line(void) { return g_error_line; }

const char* dmqkd_status_string(dmqkd_status s) {
  switch (s) {
    case DMQKD_OK: return "ok";
    case DMQKD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DMQKD_ERR_CONFIG: return "config error";
    case DMQKD_ERR_NUMERICAL: return "numerical failure";
    case DMQKD_ERR_IO: return "i/o error";
    case DMQKD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

dmqkd_status dmqkd_config_load_file(const char* path, dmqkd_config** out) {
  return guarded([&] {
    if (!path || !out) return fail(DMQKD_ERR_INVALID_ARGUMENT, "null argument");
    std::ifstream f(path);
    if (!f) return fail(DMQKD_ERR_IO, std::string("cannot open config file '") + path + "'");
    return load(f, out);
  });
}

dmqkd_status dmqkd_config_load_string(const char* text, dmqkd_config** out) {
  return guarded([&] {
    if (!text || !out) return fail(DMQKD_ERR_INVALID_ARGUMENT, "null argument");
    std::istringstream ss(text);
    return load(ss, out);
  });
}

void dmqkd_config_free(dmqkd_config* cfg) { delete cfg; }

dmqkd_status dmqkd_config_set_threads(dmqkd_config* cfg, int threads) {
  return guarded([&] {
    if (!cfg || threads < 1) return fail(DMQKD_ERR_INVALID_ARGUMENT, "threads must be >= 1");
    cfg->cfg.threads = threads;
    return DMQKD_OK;
  });
}

dmqkd_status dmqkd_config_set_seed(dmqkd_config* cfg, uint64_t seed) {
  return guarded([&] {
    if (!cfg) return fail(DMQKD_ERR_INVALID_ARGUMENT, "null config");
    cfg->cfg.seed = seed;
    return DMQKD_OK;
  });
}

dmqkd_status dmqkd_config_set_tol(dmqkd_config* cfg, double tol) {
  return guarded([&] {
    if (!cfg || !(tol > 0.0 && tol < 1e-2)) {
      return fail(DMQKD_ERR_INVALID_ARGUMENT, "tolerance must lie in (0, 1e-2)");
    }
    cfg->cfg.tol = tol;
    return DMQKD_OK;
  });
}

dmqkd_status dmqkd_config_set_rate_mode(dmqkd_config* cfg, const char* mode) {
  return guarded([&] {
    if (!cfg || !mode) return fail(DMQKD_ERR_INVALID_ARGUMENT, "null argument");
    const std::string m = mode;
    using dmqkd::RateMode;
    if (m == "asymptotic") cfg->cfg.rate_modes = {RateMode::Asymptotic};
    else if (m == "finite") cfg->cfg.rate_modes = {RateMode::Finite};
    else if (m == "both") cfg->cfg.rate_modes = {RateMode::Asymptotic, RateMode::Finite};
    else return fail(DMQKD_ERR_INVALID_ARGUMENT, "unknown rate mode '" + m + "'");
    cfg->cfg.validate();
    return DMQKD_OK;
  });
}

const char* dmqkd_config_output_path(const dmqkd_config* cfg) {
  return cfg ? cfg->cfg.output.c_str() : "";
}

dmqkd_status dmqkd_sweep_run(const dmqkd_config* cfg, dmqkd_sweep_result** out) {
  return guarded([&] {
    if (!cfg || !out) return fail(DMQKD_ERR_INVALID_ARGUMENT, "null argument");
    *out = new dmqkd_sweep_result{dmqkd::run_sweep(cfg->cfg)};
    return DMQKD_OK;
  });
}

void dmqkd_sweep_free(dmqkd_sweep_result* res) { delete res; }

size_t dmqkd_sweep_rows(const dmqkd_sweep_result* res) { return res ? res->res.rows.size() : 0; }

int dmqkd_sweep_any_numerical_failure(const dmqkd_sweep_result* res) {
  return res && res->res.any_numerical_failure ? 1 : 0;
}

dmqkd_status dmqkd_sweep_row_rate(const dmqkd_sweep_result* res, size_t row, double* rate) {
  return guarded([&] {
    if (!res || !rate || row >= res->res.rows.size()) {
      return fail(DMQKD_ERR_INVALID_ARGUMENT, "bad row index");
    }
    *rate = res->res.rows[row].rate.r_n;
    return DMQKD_OK;
  });
}

dmqkd_status dmqkd_sweep_row_status(const dmqkd_sweep_result* res, size_t row,
                                    const char** status) {
  return guarded([&] {
    if (!res || !status || row >= res->res.rows.size()) {
      return fail(DMQKD_ERR_INVALID_ARGUMENT, "bad row index");
    }
    *status = dmqkd::to_string(res->res.rows[row].rate.status);
    return DMQKD_OK;
  });
}

dmqkd_status dmqkd_sweep_csv(const dmqkd_sweep_result* res, int with_runtime, char** out) {
  return guarded([&] {
    if (!res || !out) return fail(DMQKD_ERR_INVALID_ARGUMENT, "null argument");
    std::ostringstream ss;
    dmqkd::write_csv(ss, res->res, with_runtime != 0);
    *out = dup_string(ss.str());
    return *out ? DMQKD_OK : fail(DMQKD_ERR_INTERNAL, "out of memory");
  });
}

dmqkd_status dmqkd_sweep_summary(const dmqkd_sweep_result* res, char** out) {
  return guarded([&] {
    if (!res || !out) return fail(DMQKD_ERR_INVALID_ARGUMENT, "null argument");
    std::ostringstream ss;
    dmqkd::write_summary(ss, res->res);
    *out = dup_string(ss.str());
    return *out ? DMQKD_OK : fail(DMQKD_ERR_INTERNAL, "out of memory");
  });
}

void dmqkd_string_free(char* s) { std::free(s); }

dmqkd_status dmqkd_records_write(const dmqkd_config* cfg, double loss_db, uint64_t rounds,
                                 const char* path) {
  return guarded([&] {
    if (!cfg || !path) return fail(DMQKD_ERR_INVALID_ARGUMENT, "null argument");
    if (rounds == 0 || rounds > 100000000ULL) {
      return fail(DMQKD_ERR_INVALID_ARGUMENT, "rounds must lie in [1, 1e8]");
    }
    const auto& c = cfg->cfg;
    const dmqkd::DetectorModel det(c.ranges.front(), c.bins);
    const auto ch = dmqkd::ChannelModel::from_loss_db(loss_db, c.excess_noise);
    dmqkd::SampleOptions opt;
    opt.threads = c.threads;
    const auto sr = dmqkd::sample_records(rounds, c.seed, ch, det, c.constellation(), opt);
    std::ofstream f(path);
    if (!f) return fail(DMQKD_ERR_IO, std::string("cannot write '") + path + "'");
    dmqkd::write_records_csv(f, sr.records);
    return f ? DMQKD_OK : fail(DMQKD_ERR_IO, "write failed");
  });
}

dmqkd_status dmqkd_dump_sdp(const dmqkd_config* cfg, double loss_db, const char* rate_mode,
                            double n, const char* sdp_mode, int dim, const char* prefix) {
  return guarded([&] {
    if (!cfg || !rate_mode || !sdp_mode || !prefix) {
      return fail(DMQKD_ERR_INVALID_ARGUMENT, "null argument");
    }
    const auto& c = cfg->cfg;
    const double R = c.ranges.front();
    const int N = static_cast<int>(std::floor(2 * R * R));
    dmqkd::PointRequest req;
    req.loss_db = loss_db;
    req.n = n;
    const std::string rm = rate_mode, sm = sdp_mode;
    if (rm == "asymptotic") req.rate_mode = dmqkd::RateMode::Asymptotic;
    else if (rm == "finite") req.rate_mode = dmqkd::RateMode::Finite;
    else return fail(DMQKD_ERR_INVALID_ARGUMENT, "unknown rate mode '" + rm + "'");
    if (sm == "truncated") {
      req.sdp_mode = dmqkd::SdpMode::InfiniteTruncated;
      req.dim = dim > 0 ? dim : N + 1;
    } else if (sm == "finite-dim") {
      req.sdp_mode = dmqkd::SdpMode::FiniteDim;
      req.dim = N + 1;
    } else {
      return fail(DMQKD_ERR_INVALID_ARGUMENT, "unknown SDP mode '" + sm + "'");
    }
    if (!(loss_db >= 0.0)) return fail(DMQKD_ERR_INVALID_ARGUMENT, "loss must be >= 0 dB");
    const auto ctx = dmqkd::make_context(c, R);
    const auto ops = dmqkd::build_detector_operators(ctx.det, req.dim);
    const auto [pb, pab] = dmqkd::point_problems(ctx, req, ops);
    const std::string base = prefix;
    for (const auto& [p, suffix] : {std::pair{&pb, "_gammaB.sdp"}, std::pair{&pab, "_gammaAB.sdp"}}) {
      std::ofstream f(base + suffix);
      if (!f) return fail(DMQKD_ERR_IO, "cannot write '" + base + suffix + "'");
      dmqkd::write_problem(f, *p);
      if (!f) return fail(DMQKD_ERR_IO, "write failed");
    }
    return DMQKD_OK;
  });
}

dmqkd_status dmqkd_solve_sdp_file(const char* path, double tol, double* value, double* bound,
                                  double* gap) {
  return guarded([&] {
    if (!path) return fail(DMQKD_ERR_INVALID_ARGUMENT, "null path");
    std::ifstream f(path);
    if (!f) return fail(DMQKD_ERR_IO, std::string("cannot open '") + path + "'");
    const auto p = dmqkd::read_problem(f);
    dmqkd::SolverOptions opt;
    if (tol > 0.0) opt.tol = tol;
    opt.keep_primal = false;
    const auto sol = dmqkd::solve(p, opt);
    if (sol.status == dmqkd::SdpStatus::Infeasible) {
      return fail(DMQKD_ERR_NUMERICAL, "problem reported infeasible");
    }
    if (value) *value = sol.dual_value;
    if (bound) *bound = sol.bound;
    if (gap) *gap = sol.gap;
    return DMQKD_OK;
  });
}

}  // extern "C"
