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

#ifndef LAPRMT_REPORT_HPP_
#define LAPRMT_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace laprmt {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool passed = false;
};

// Outcome of one verification experiment: pass/fail checks plus free-form
// statistics. Serialization is deterministic (insertion-ordered keys).
struct VerificationReport {
  std::string name;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<Check> checks;
  Json stats = Json::object();

  // Records value <= bound (or the given outcome) as a named check.
  void check_le(const std::string& check_name, double value, double bound);
  void check_ge(const std::string& check_name, double value, double bound);
  void check(const std::string& check_name, bool outcome, double value = 0.0,
             double bound = 0.0);
  bool passed() const;
  Json to_json() const;
};

// Order statistics on copies; empty input yields NaN.
double mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v);
double standard_error(const std::vector<double>& v);
double quantile(std::vector<double> v, double p);
double median(std::vector<double> v);
double max_of(const std::vector<double>& v);
double min_of(const std::vector<double>& v);

}  // namespace laprmt

#endif  // LAPRMT_REPORT_HPP_
