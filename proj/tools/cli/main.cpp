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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiments.hpp"
#include "laprmt/error.hpp"
#include "laprmt/parallel.hpp"

namespace {

using namespace laprmt::cli;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> n;
  std::optional<double> q_exp;
  std::optional<std::string> out;
  std::optional<std::string> threads;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "flat JSON config file");
  cmd->add_option("--seed", f.seed, "master seed (u64)");
  cmd->add_option("--trials", f.trials, "number of Monte Carlo trials");
  cmd->add_option("--n", f.n, "matrix parameter N (matrices are (N+1)x(N+1))");
  cmd->add_option("--q-exp", f.q_exp, "sparsity exponent: q = N^q_exp");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--threads", f.threads, "worker threads or 'auto'");
}

ConfigSource merged_source(const Flags& f) {
  ConfigSource src = f.config.empty() ? ConfigSource{} : load_config_file(f.config);
  auto put = [&](const char* key, laprmt::Json value) {
    src.values[key] = std::move(value);
    src.lines[key] = 0;
  };
  if (f.seed) put("seed", *f.seed);
  if (f.trials) put("trials", *f.trials);
  if (f.n) put("n", *f.n);
  if (f.q_exp) put("q_exp", *f.q_exp);
  if (f.out) put("output_dir", *f.out);
  if (f.threads) {
    if (*f.threads == "auto") {
      put("threads", "auto");
    } else {
      try {
        std::size_t used = 0;
        const int t = std::stoi(*f.threads, &used);
        put("threads", used == f.threads->size() ? laprmt::Json(t) : laprmt::Json(*f.threads));
      } catch (const std::exception&) {
        put("threads", *f.threads);
      }
    }
  }
  return src;
}

int run(const Flags& f, std::optional<Experiment> experiment) {
  RunConfig config;
  try {
    config = validate_config(merged_source(f), experiment);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  try {
    const int threads = laprmt::resolve_threads(config.threads);
    const Outcome outcome = run_experiment(config, threads);
    const auto paths = write_outputs(config, outcome);
    std::cout << experiment_name(config.experiment) << "  seed " << config.seed << "  config "
              << config_hash(config) << "  threads " << threads << '\n'
              << format_checks(outcome);
    for (const auto& p : paths) std::cout << "wrote " << p << '\n';
    return outcome.report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laprmt: random Laplacian-type matrix laboratory"};
  app.require_subcommand(1);
  Flags flags;
  std::optional<Experiment> chosen;
  bool validate_only = false;

  for (const auto& name : experiment_names()) {
    CLI::App* cmd = app.add_subcommand(name, "run the " + name + " experiment");
    add_flags(cmd, flags);
    cmd->callback([&, name] { chosen = parse_experiment(name); });
  }
  CLI::App* check = app.add_subcommand("validate", "validate a config and print its canonical form");
  check->add_option("--config", flags.config, "flat JSON config file")->required();
  check->callback([&] { validate_only = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (validate_only) {
    try {
      const RunConfig c = validate_config(load_config_file(flags.config));
      laprmt::Json j = canonical_json(c);
      j["output_dir"] = c.output_dir;
      j["threads"] = c.threads == 0 ? laprmt::Json("auto") : laprmt::Json(c.threads);
      std::cout << j.dump(2) << "\nconfig_hash " << config_hash(c) << '\n';
      return 0;
    } catch (const ConfigError& e) {
      std::cerr << e.what() << '\n';
      return 2;
    }
  }
  return run(flags, chosen);
}
