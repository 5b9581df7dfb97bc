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

#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "dmqkd/config.hpp"
#include "dmqkd/pipeline.hpp"

namespace dmqkd {

struct SweepResult {
  std::vector<PointResult> rows;  // input order
  bool any_numerical_failure = false;
};

// Called from worker threads after each point, with (done, total).
using SweepProgress = std::function<void(std::size_t, std::size_t)>;

PointContext make_context(const RunConfig& cfg, double R);
std::vector<PointRequest> expand_requests(const RunConfig& cfg, double R);

SweepResult run_sweep(const RunConfig& cfg, const SweepProgress& progress = {});

extern const char* const kCsvHeader;
void write_csv(std::ostream& os, const SweepResult& res, bool with_runtime = true);
void write_summary(std::ostream& os, const SweepResult& res);

}  // namespace dmqkd
