// Copyright 2026 The laprmt Authors.
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


#ifndef LAPRMT_TOOLS_EXPERIMENTS_HPP_
#define LAPRMT_TOOLS_EXPERIMENTS_HPP_

#include <string>
#include <vector>

#include "config.hpp"
#include "laprmt/report.hpp"

namespace laprmt::cli {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

struct Outcome {
  VerificationReport report;
  Table detail;
};

// threads: resolved worker count; never affects the results.
Outcome run_experiment(const RunConfig& config, int threads);

// Deterministic summary: config, hash, seed, checks and stats.
Json summary_json(const RunConfig& config, const Outcome& outcome);

// Writes <experiment>_summary.json and <experiment>_detail.csv into
// config.output_dir; returns the two paths.
std::vector<std::string> write_outputs(const RunConfig& config, const Outcome& outcome);

// One-screen text table of the checks.
std::string format_checks(const Outcome& outcome);

std::string fmt(double x);

}  // namespace laprmt::cli

#endif  // LAPRMT_TOOLS_EXPERIMENTS_HPP_
