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

#include "laprmt/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace laprmt {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// JSON has no NaN/inf; emit null instead.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

void VerificationReport::check_le(const std::string& check_name, double value,
                                  double bound) {
  checks.push_back({check_name, value, bound, value <= bound});
}

void VerificationReport::check_ge(const std::string& check_name, double value,
                                  double bound) {
  checks.push_back({check_name, value, bound, value >= bound});
}

void VerificationReport::check(const std::string& check_name, bool outcome,
                               double value, double bound) {
  checks.push_back({check_name, value, bound, outcome});
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

Json VerificationReport::to_json() const {
  Json out;
  out["experiment"] = name;
  out["seed"] = seed;
  out["trials"] = trials;
  out["passed"] = passed();
  Json list = Json::array();
  for (const auto& c : checks) {
    Json item;
    item["name"] = c.name;
    item["value"] = number(c.value);
    item["bound"] = number(c.bound);
    item["passed"] = c.passed;
    list.push_back(std::move(item));
  }
  out["checks"] = std::move(list);
  out["stats"] = stats;
  return out;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) return kNaN;
  const double mu = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return s / static_cast<double>(v.size() - 1);
}

double standard_error(const std::vector<double>& v) {
  return std::sqrt(sample_variance(v) / static_cast<double>(v.size()));
}

double quantile(std::vector<double> v, double p) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  // Linear interpolation between order statistics (type 7).
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

double max_of(const std::vector<double>& v) {
  return v.empty() ? kNaN : *std::max_element(v.begin(), v.end());
}

double min_of(const std::vector<double>& v) {
  return v.empty() ? kNaN : *std::min_element(v.begin(), v.end());
}

}  // namespace laprmt
