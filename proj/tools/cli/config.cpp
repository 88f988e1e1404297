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

#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace laprmt::cli {
namespace {

const std::vector<std::pair<Experiment, std::string>>& experiment_table() {
  static const std::vector<std::pair<Experiment, std::string>> table{
      {Experiment::kDensity, "density"},         {Experiment::kLocalLaw, "locallaw"},
      {Experiment::kRigidity, "rigidity"},       {Experiment::kDeloc, "deloc"},
      {Experiment::kIdentities, "identities"},   {Experiment::kDecompose, "decompose"},
      {Experiment::kFlow, "flow"},               {Experiment::kGaps, "gaps"},
      {Experiment::kCorrelations, "correlations"}, {Experiment::kRepulsion, "repulsion"},
      {Experiment::kGraphSum, "graphsum"},
  };
  return table;
}

// Per-experiment defaults for the keys whose natural value differs.
void apply_defaults(RunConfig& c) {
  switch (c.experiment) {
    case Experiment::kDensity: c.trials = 1; break;
    case Experiment::kLocalLaw: c.trials = 10; break;
    case Experiment::kRigidity:
    case Experiment::kDeloc: c.trials = 20; break;
    case Experiment::kIdentities: c.n = 200; c.trials = 50; break;
    case Experiment::kDecompose: c.n = 100; c.trials = 500; break;
    case Experiment::kFlow: c.n = 100; c.trials = 500; break;
    case Experiment::kGaps: c.trials = 200; c.kappa = 0.45; break;
    case Experiment::kCorrelations: c.trials = 300; c.bound = 0.1; break;
    case Experiment::kRepulsion: c.n = 500; c.trials = 2000; c.q_exp = 0.4; break;
    case Experiment::kGraphSum: c.n = 60; c.trials = 50; break;
  }
}

int line_of(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

class Validator {
 public:
  Validator(const ConfigSource& src) : src_(src) {}

  bool has(const std::string& key) const { return src_.values.contains(key); }

  void fail(const std::string& key, const std::string& message) {
    const auto it = src_.lines.find(key);
    issues_.push_back({it == src_.lines.end() ? -1 : it->second, key, message});
  }

  template <typename T>
  void integer(const std::string& key, T& out, long double lo, long double hi) {
    if (!has(key)) return;
    const Json& v = src_.values.at(key);
    if (!v.is_number_integer()) return fail(key, "expected an integer");
    const long double x =
        v.is_number_unsigned() ? static_cast<long double>(v.get<std::uint64_t>())
                               : static_cast<long double>(v.get<std::int64_t>());
    if (x < lo || x > hi) {
      std::ostringstream os;
      os << "value " << v.dump() << " out of range [" << static_cast<double>(lo) << ", "
         << static_cast<double>(hi) << "]";
      return fail(key, os.str());
    }
    out = static_cast<T>(x);
  }

  void real(const std::string& key, double& out, const std::function<bool(double)>& ok,
            const std::string& range) {
    if (!has(key)) return;
    const Json& v = src_.values.at(key);
    if (!v.is_number()) return fail(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x) || !ok(x)) return fail(key, "value " + v.dump() + " out of range: " + range);
    out = x;
  }

  void text(const std::string& key, std::string& out, const std::set<std::string>& allowed) {
    if (!has(key)) return;
    const Json& v = src_.values.at(key);
    if (!v.is_string()) return fail(key, "expected a string");
    const std::string s = v.get<std::string>();
    if (!allowed.empty() && !allowed.count(s)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      return fail(key, "\"" + s + "\" is not one of: " + list);
    }
    if (s.empty()) return fail(key, "must not be empty");
    out = s;
  }

  std::vector<ConfigIssue> issues_;

 private:
  const ConfigSource& src_;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "experiment", "seed",       "trials", "n",       "q_exp",       "law",
      "L",          "nu",         "kappa",  "tau",     "t",           "epsilon",
      "eta",        "energy",     "half_width", "order", "graphs",    "cov_n",
      "cov_samples", "constant",  "bound",  "output_dir", "threads"};
  return keys;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [e, name] : experiment_table()) out.push_back(name);
    return out;
  }();
  return names;
}

const char* experiment_name(Experiment e) {
  for (const auto& [x, name] : experiment_table()) {
    if (x == e) return name.c_str();
  }
  return "?";
}

std::optional<Experiment> parse_experiment(const std::string& name) {
  for (const auto& [x, n] : experiment_table()) {
    if (n == name) return x;
  }
  return std::nullopt;
}

EntryLaw RunConfig::resolved_law() const {
  if (law == "gaussian") return EntryLaw::kGaussian;
  if (law == "bernoulli") return EntryLaw::kBernoulliCentered;
  // auto: Bernoulli unless it would be the complete graph.
  return q_exp >= 0.5 ? EntryLaw::kGaussian : EntryLaw::kBernoulliCentered;
}

EnsembleSpec RunConfig::ensemble() const {
  EnsembleSpec spec = EnsembleSpec::from_exponent(n, q_exp, resolved_law());
  spec.nu = nu;
  return spec;
}

std::string ConfigIssue::to_string() const {
  std::string where = line > 0 ? "line " + std::to_string(line)
                     : line == 0 ? std::string("command line")
                                 : std::string("config");
  return where + ": " + (key.empty() ? "" : key + ": ") + message;
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error([&] {
        std::string s = "invalid configuration";
        for (const auto& i : issues) s += "\n  " + i.to_string();
        return s;
      }()),
      issues_(std::move(issues)) {}

ConfigSource parse_config_text(const std::string& text) {
  ConfigSource src;
  Json parsed;
  try {
    parsed = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError({{line_of(text, e.byte == 0 ? 0 : e.byte - 1), "",
                        std::string("syntax error: ") + e.what()}});
  }
  if (!parsed.is_object()) throw ConfigError({{1, "", "top level must be a JSON object"}});
  std::vector<ConfigIssue> issues;
  for (auto it = parsed.begin(); it != parsed.end(); ++it) {
    const std::string needle = "\"" + it.key() + "\"";
    const std::size_t pos = text.find(needle);
    const int line = pos == std::string::npos ? 0 : line_of(text, pos);
    src.lines[it.key()] = line;
    if (it.value().is_object() || it.value().is_array()) {
      issues.push_back({line, it.key(), "nested values are not allowed (flat key-value format)"});
    }
  }
  if (!issues.empty()) throw ConfigError(issues);
  src.values = std::move(parsed);
  return src;
}

ConfigSource load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{0, "", "cannot read config file '" + path + "'"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig validate_config(const ConfigSource& src, std::optional<Experiment> experiment) {
  Validator v(src);
  RunConfig c;
  for (auto it = src.values.begin(); it != src.values.end(); ++it) {
    if (!known_keys().count(it.key())) v.fail(it.key(), "unknown key");
  }

  std::optional<Experiment> from_file;
  if (v.has("experiment")) {
    const Json& e = src.values.at("experiment");
    if (!e.is_string() || !parse_experiment(e.get<std::string>())) {
      std::string list;
      for (const auto& n : experiment_names()) list += (list.empty() ? "" : ", ") + n;
      v.fail("experiment", "expected one of: " + list);
    } else {
      from_file = parse_experiment(e.get<std::string>());
    }
  }
  if (experiment && from_file && *experiment != *from_file) {
    v.fail("experiment", std::string("config names '") + experiment_name(*from_file) +
                             "' but the subcommand is '" + experiment_name(*experiment) + "'");
  }
  if (experiment) {
    c.experiment = *experiment;
  } else if (from_file) {
    c.experiment = *from_file;
  } else if (!v.has("experiment")) {
    v.fail("experiment", "missing required field");
  }
  apply_defaults(c);

  if (!v.has("seed")) v.fail("seed", "missing required field");
  v.integer("seed", c.seed, 0.0L, 18446744073709551615.0L);
  v.integer("trials", c.trials, 1, 10000000);
  v.integer("n", c.n, 2, 4095);
  v.real("q_exp", c.q_exp, [](double x) { return x > 0.0 && x <= 0.5; },
         "the model requires N^beta <= q <= N^{1/2} with beta > 0, i.e. 0 < q_exp <= 0.5");
  v.text("law", c.law, {"auto", "bernoulli", "gaussian"});
  v.real("L", c.l, [](double x) { return x > 0.0; }, "L > 0");
  v.real("nu", c.nu, [](double x) { return x > 0.0 && x < 0.5; }, "0 < nu < 0.5");
  v.real("kappa", c.kappa, [](double x) { return x > 0.0 && x < 0.5; }, "0 < kappa < 0.5");
  v.real("tau", c.tau, [](double x) { return x > 0.0 && x < 1.0; }, "0 < tau < 1");
  v.real("t", c.t, [](double x) { return x >= 0.0; }, "t >= 0 (0 selects N^{-1+epsilon})");
  v.real("epsilon", c.epsilon, [](double x) { return x > 0.0 && x < 1.0; }, "0 < epsilon < 1");
  v.real("eta", c.eta, [](double x) { return x > 0.0; }, "eta > 0");
  v.real("energy", c.energy, [](double) { return true; }, "");
  v.real("half_width", c.half_width, [](double x) { return x >= 0.0; },
         "half_width >= 0 (0 selects N^{-0.9})");
  v.integer("order", c.order, 1, 2);
  v.integer("graphs", c.graphs, 1, 100000);
  v.integer("cov_n", c.cov_n, 2, 50);
  v.integer("cov_samples", c.cov_samples, 1, 1e9L);
  v.real("constant", c.constant, [](double x) { return x > 0.0; }, "constant > 0");
  v.real("bound", c.bound, [](double x) { return x > 0.0; }, "bound > 0");
  v.text("output_dir", c.output_dir, {});
  if (v.has("threads")) {
    const Json& t = src.values.at("threads");
    if (t.is_string() && t.get<std::string>() == "auto") {
      c.threads = 0;
    } else if (t.is_number_integer()) {
      v.integer("threads", c.threads, 1, 1024);
    } else {
      v.fail("threads", "expected \"auto\" or a positive integer");
    }
  }
  if (std::abs(c.energy) > c.l) v.fail("energy", "|energy| must not exceed L");
  if (c.experiment == Experiment::kGaps || c.experiment == Experiment::kRigidity ||
      c.experiment == Experiment::kDeloc) {
    if (c.kappa * c.n < 1.0) v.fail("kappa", "bulk window needs kappa N >= 1");
  }
  if (c.experiment == Experiment::kCorrelations && c.half_width > 0.0 &&
      c.half_width <= 1.0 / c.n) {
    v.fail("half_width", "must satisfy b >= N^{-1+delta} with delta > 0");
  }
  if (!v.issues_.empty()) throw ConfigError(v.issues_);
  return c;
}

RunConfig validate_config(const std::string& text) {
  return validate_config(parse_config_text(text));
}

Json canonical_json(const RunConfig& c) {
  Json j;
  j["experiment"] = experiment_name(c.experiment);
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["n"] = c.n;
  j["q_exp"] = c.q_exp;
  j["law"] = c.law;
  j["L"] = c.l;
  j["nu"] = c.nu;
  j["kappa"] = c.kappa;
  j["tau"] = c.tau;
  j["t"] = c.t;
  j["epsilon"] = c.epsilon;
  j["eta"] = c.eta;
  j["energy"] = c.energy;
  j["half_width"] = c.half_width;
  j["order"] = c.order;
  j["graphs"] = c.graphs;
  j["cov_n"] = c.cov_n;
  j["cov_samples"] = c.cov_samples;
  j["constant"] = c.constant;
  j["bound"] = c.bound;
  return j;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_json(c).dump())));
  return buf;
}

}  // namespace laprmt::cli
