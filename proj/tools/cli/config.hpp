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


#ifndef LAPRMT_TOOLS_CONFIG_HPP_
#define LAPRMT_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "laprmt/ensemble.hpp"
#include "laprmt/report.hpp"

namespace laprmt::cli {

enum class Experiment {
  kDensity,
  kLocalLaw,
  kRigidity,
  kDeloc,
  kIdentities,
  kDecompose,
  kFlow,
  kGaps,
  kCorrelations,
  kRepulsion,
  kGraphSum,
};

const std::vector<std::string>& experiment_names();
const char* experiment_name(Experiment e);
std::optional<Experiment> parse_experiment(const std::string& name);

struct RunConfig {
  Experiment experiment = Experiment::kDensity;
  std::uint64_t seed = 0;
  int trials = 1;
  int n = 1000;
  double q_exp = 0.35;
  std::string law = "auto";  // auto | bernoulli | gaussian
  double l = 5.0;
  double nu = 0.1;
  double kappa = 0.1;
  double tau = 0.2;
  double t = 0.0;  // 0: N^{-1+epsilon}
  double epsilon = 0.3;
  double eta = 0.5;
  double energy = 0.0;
  double half_width = 0.0;  // 0: N^{-0.9}
  int order = 2;
  int graphs = 50;
  int cov_n = 5;
  std::int64_t cov_samples = 200000;
  double constant = 5.0;
  double bound = 10.0;
  std::string output_dir = ".";
  int threads = 0;  // 0: auto

  EnsembleSpec ensemble() const;
  EntryLaw resolved_law() const;
};

// One problem found while validating. line 0: from a command-line flag;
// line -1: not present anywhere (e.g. a missing field).
struct ConfigIssue {
  int line = 0;
  std::string key;
  std::string message;
  std::string to_string() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

// Raw key/value input with the line each key came from.
struct ConfigSource {
  Json values = Json::object();
  std::map<std::string, int> lines;
};

// Parses flat JSON text; syntax errors raise ConfigError with a line number.
ConfigSource parse_config_text(const std::string& text);
ConfigSource load_config_file(const std::string& path);

// Strict validation; unknown keys and range violations are aggregated.
// `experiment` (if set) fills or must match the file's experiment key.
RunConfig validate_config(const ConfigSource& source,
                          std::optional<Experiment> experiment = std::nullopt);
RunConfig validate_config(const std::string& text);

// Canonical form: every key, fixed order; threads and output_dir excluded.
Json canonical_json(const RunConfig& c);
std::uint64_t fnv1a64(const std::string& bytes);
std::string config_hash(const RunConfig& c);

}  // namespace laprmt::cli

#endif  // LAPRMT_TOOLS_CONFIG_HPP_
