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

#include "experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "laprmt/laprmt.hpp"

namespace laprmt::cli {
namespace {

std::string num(std::int64_t x) { return std::to_string(x); }

Table stats_table(const Json& stats) {
  Table t;
  t.header = {"key", "value"};
  for (auto it = stats.begin(); it != stats.end(); ++it) {
    t.rows.push_back({it.key(), it.value().is_string() ? it.value().get<std::string>()
                                                       : it.value().dump()});
  }
  return t;
}

Outcome density(const RunConfig& c, int threads) {
  (void)threads;
  const DensityTable table = tabulate_density();
  Outcome out;
  out.report = density_check(table);
  const VerificationReport reg = regularity_report(c.l, c.n, c.nu);
  for (Check chk : reg.checks) {
    chk.name = "D1_" + chk.name;
    out.report.checks.push_back(chk);
  }
  out.report.stats["regularity"] = reg.stats;
  out.report.seed = c.seed;
  out.report.trials = 1;
  out.detail.header = {"E", "rho_fc", "cdf"};
  for (std::size_t k = 0; k < table.e.size(); ++k) {
    out.detail.rows.push_back({fmt(table.e[k]), fmt(table.rho[k]), fmt(table.cdf[k])});
  }
  return out;
}

Outcome locallaw(const RunConfig& c, int threads) {
  LocalLawOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = threads;
  o.constant = c.constant;
  const LocalLawResult r = run_locallaw(c.ensemble(), build_domain(c.l, c.n, c.nu), o);
  Outcome out{r.report, {}};
  out.detail.header = {"E",      "eta",        "region",      "re_m_fc",         "im_m_fc",
                       "xi_psi", "mean_defect", "max_defect", "max_diag_defect"};
  for (const auto& p : r.points) {
    out.detail.rows.push_back({fmt(p.point.z.real()), fmt(p.point.z.imag()),
                               region_name(p.point.region), fmt(p.m_fc.real()),
                               fmt(p.m_fc.imag()), fmt(p.xi_psi), fmt(p.mean_defect),
                               fmt(p.max_defect), fmt(p.max_diagonal_defect)});
  }
  return out;
}

Outcome bulk(const RunConfig& c, int threads, bool rigidity) {
  BulkOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = threads;
  o.kappa = c.kappa;
  o.bound = c.bound;
  const BulkResult r = rigidity ? run_rigidity(c.ensemble(), o) : run_delocalization(c.ensemble(), o);
  Outcome out{r.report, {}};
  if (!rigidity && !r.degenerate) {
    const BulkResult goe = run_goe_delocalization(c.n, c.nu, o);
    out.report.stats["goe_control"] = goe.report.stats["normalized_sup_norm"];
  }
  out.detail.header = {"trial", rigidity ? "max_deviation_over_xi2_q" : "max_N_sup2_over_xi3"};
  for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
    out.detail.rows.push_back({num(t), fmt(r.per_trial[t])});
  }
  return out;
}

Outcome identities(const RunConfig& c, int threads) {
  const IdentityRun r = run_identities(c.ensemble(), {1e-3, 0.1, 2.0}, c.trials, c.seed, threads);
  Outcome out{r.report, {}};
  out.detail.header = {"trial", "eta", "schur", "minor", "row", "ward",
                       "tilde_left", "tilde_right", "rank_one", "error_term"};
  for (std::size_t k = 0; k < r.defects.size(); ++k) {
    const auto& d = r.defects[k];
    out.detail.rows.push_back({num(k / r.eta.size()), fmt(r.eta[k % r.eta.size()]), fmt(d.schur),
                               fmt(d.minor), fmt(d.row), fmt(d.ward), fmt(d.tilde_left),
                               fmt(d.tilde_right), fmt(d.rank_one), fmt(d.error_term)});
  }
  return out;
}

Outcome decompose(const RunConfig& c, int threads) {
  DecompositionOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = threads;
  o.cov_n = c.cov_n;
  o.cov_samples = c.cov_samples;
  const DecompositionResult r = run_decomposition(c.n, o);
  return {r.report, stats_table(r.report.stats)};
}

Outcome flow(const RunConfig& c, int threads) {
  FlowOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = threads;
  o.t = c.t;
  o.epsilon = c.epsilon;
  const FlowResult r = run_flow(c.ensemble(), o);
  Outcome out{r.report, {}};
  out.detail.header = {"t", "mean_normalized_middle_gap", "Q_median", "Q_q90"};
  for (const auto& row : r.per_time) {
    out.detail.rows.push_back({fmt(row.t), fmt(row.mean_gap), fmt(row.q_median), fmt(row.q_q90)});
  }
  return out;
}

Outcome gaps(const RunConfig& c, int threads) {
  GapExperimentOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = threads;
  o.kappa = c.kappa;
  const GapExperimentResult r = run_gap_universality(c.ensemble(), o);
  Outcome out{r.report, {}};
  out.detail.header = {"ensemble", "trial", "index", "normalized_gap"};
  for (const GapSample* s : {&r.laplacian, &r.goe, &r.goe_null}) {
    const std::string tag = s == &r.goe_null ? "goe_null" : s->ensemble;
    for (std::size_t t = 0; t < s->trials(); ++t) {
      for (std::size_t k = s->trial_offsets[t]; k < s->trial_offsets[t + 1]; ++k) {
        out.detail.rows.push_back({tag, num(t),
                                   num(s->index_window.first + (k - s->trial_offsets[t])),
                                   fmt(s->values[k])});
      }
    }
  }
  return out;
}

Outcome correlations(const RunConfig& c, int threads) {
  CorrelationOptions co;
  co.e_center = c.energy;
  co.half_width = c.half_width;
  co.order = c.order;
  co.l = c.l;
  TrialOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = threads;
  const CorrelationExperimentResult r = run_correlations(c.ensemble(), co, o, c.bound);
  Outcome out{r.report, {}};
  out.detail.header = {c.order == 1 ? "alpha" : "separation", "laplacian", "goe"};
  for (std::size_t k = 0; k < r.laplacian.histogram.size(); ++k) {
    out.detail.rows.push_back(
        {fmt(r.laplacian.bin_center(k)), fmt(r.laplacian.histogram[k]), fmt(r.goe.histogram[k])});
  }
  return out;
}

Outcome repulsion(const RunConfig& c, int threads) {
  RepulsionOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = threads;
  o.tau = c.tau;
  const RepulsionResult r = run_level_repulsion(c.ensemble(), o);
  Outcome out{r.report, {}};
  out.detail.header = {"trial", "gap", "Q_i"};
  for (std::size_t t = 0; t < r.gaps.size(); ++t) {
    out.detail.rows.push_back({num(t), fmt(r.gaps[t]), fmt(r.q_values[t])});
  }
  return out;
}

Outcome graphsum(const RunConfig& c, int threads) {
  GraphSumOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = threads;
  o.graphs = c.graphs;
  o.eta = c.eta;
  o.energy = c.energy;
  const GraphSumResult r = run_graph_sums(c.ensemble(), o);
  return {r.report, stats_table(r.report.stats)};
}

}  // namespace

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) os << ',';
      const bool quote = cells[k].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        os << cells[k];
        continue;
      }
      os << '"';
      for (char ch : cells[k]) os << (ch == '"' ? "\"\"" : std::string(1, ch));
      os << '"';
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

Outcome run_experiment(const RunConfig& c, int threads) {
  Outcome out;
  switch (c.experiment) {
    case Experiment::kDensity: out = density(c, threads); break;
    case Experiment::kLocalLaw: out = locallaw(c, threads); break;
    case Experiment::kRigidity: out = bulk(c, threads, true); break;
    case Experiment::kDeloc: out = bulk(c, threads, false); break;
    case Experiment::kIdentities: out = identities(c, threads); break;
    case Experiment::kDecompose: out = decompose(c, threads); break;
    case Experiment::kFlow: out = flow(c, threads); break;
    case Experiment::kGaps: out = gaps(c, threads); break;
    case Experiment::kCorrelations: out = correlations(c, threads); break;
    case Experiment::kRepulsion: out = repulsion(c, threads); break;
    case Experiment::kGraphSum: out = graphsum(c, threads); break;
  }
  out.report.name = experiment_name(c.experiment);
  return out;
}

Json summary_json(const RunConfig& c, const Outcome& outcome) {
  const Json rep = outcome.report.to_json();
  Json j;
  j["schema"] = "laprmt.summary/1";
  j["experiment"] = experiment_name(c.experiment);
  j["config_hash"] = config_hash(c);
  j["seed"] = c.seed;
  j["config"] = canonical_json(c);
  j["passed"] = rep["passed"];
  j["checks"] = rep["checks"];
  j["stats"] = rep["stats"];
  return j;
}

std::vector<std::string> write_outputs(const RunConfig& c, const Outcome& outcome) {
  namespace fs = std::filesystem;
  const fs::path dir(c.output_dir);
  fs::create_directories(dir);
  const std::string stem = experiment_name(c.experiment);
  const fs::path summary = dir / (stem + "_summary.json");
  const fs::path detail = dir / (stem + "_detail.csv");
  {
    std::ofstream os(summary, std::ios::binary);
    os << summary_json(c, outcome).dump(2) << '\n';
    if (!os) throw Error("cannot write " + summary.string());
  }
  {
    std::ofstream os(detail, std::ios::binary);
    os << outcome.detail.to_csv();
    if (!os) throw Error("cannot write " + detail.string());
  }
  return {summary.string(), detail.string()};
}

std::string format_checks(const Outcome& outcome) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-40s %14s %14s  %s\n", "check", "value", "bound", "result");
  os << buf;
  for (const auto& chk : outcome.report.checks) {
    std::snprintf(buf, sizeof buf, "%-40s %14.6g %14.6g  %s\n", chk.name.c_str(), chk.value,
                  chk.bound, chk.passed ? "PASS" : "FAIL");
    os << buf;
  }
  os << (outcome.report.passed() ? "all checks passed\n" : "some checks failed\n");
  return os.str();
}

}  // namespace laprmt::cli
