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

#ifndef LAPRMT_LOCALLAW_HPP_
#define LAPRMT_LOCALLAW_HPP_

#include <cstdint>
#include <vector>

#include "laprmt/domain.hpp"
#include "laprmt/ensemble.hpp"
#include "laprmt/freeconv.hpp"
#include "laprmt/graphs.hpp"
#include "laprmt/report.hpp"
#include "laprmt/spectra.hpp"

namespace laprmt {

// Constants swept when an asymptotic bound C xi Psi is tested.
inline const std::vector<double> kConstantSweep{1.0, 2.0, 5.0, 10.0};

struct TrialOptions {
  int trials = 10;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct LocalLawOptions : TrialOptions {
  bool entrywise = true;
  // Acceptance constant: fraction of D1 points with defect <= C xi Psi.
  double constant = 5.0;
  double required_fraction = 0.95;
  SolverOptions solver;
};

struct LocalLawPoint {
  DomainPoint point;
  Complex m_fc;
  double xi_psi = 0.0;
  double mean_defect = 0.0;
  double max_defect = 0.0;
  double max_diagonal_defect = 0.0;  // entrywise, when enabled
};

struct LocalLawResult {
  VerificationReport report;
  std::vector<LocalLawPoint> points;
  std::vector<double> sup_defect;           // per trial, over D1
  std::vector<double> d1_fraction;          // per trial, at options.constant
  std::vector<double> max_offdiagonal;      // per trial, sampled points
};

// |m_N - m_fc| and the entrywise defect max_i |G_ii - 1/(H_ii - z - m_fc)|
// over a spectral domain, Monte Carlo over trials.
LocalLawResult run_locallaw(const EnsembleSpec& spec, const SpectralDomain& domain,
                            const LocalLawOptions& opts);
VerificationReport locallaw_report(const EnsembleSpec& spec, const SpectralDomain& domain,
                                   int trials, std::uint64_t seed);

struct BulkOptions : TrialOptions {
  double kappa = 0.1;
  double bound = 10.0;
};

struct BulkResult {
  VerificationReport report;
  std::vector<double> per_trial;  // normalized maxima
  bool degenerate = false;
};

// Bulk index range [ceil(kappa N), floor((1 - kappa) N)], 1-based inclusive.
std::pair<int, int> bulk_range(int n, double kappa);

// max_i |lambda_i - gamma_i| / (xi^2 / q) over bulk indices.
BulkResult run_rigidity(const EnsembleSpec& spec, const BulkOptions& opts);
VerificationReport rigidity_report(const EnsembleSpec& spec, double kappa, int trials,
                                   std::uint64_t seed);

// max over bulk eigenvectors of N ||u_i||_inf^2 / xi^3.
double delocalization_statistic(const Matrix& vectors, int n, double xi, double kappa);
BulkResult run_delocalization(const EnsembleSpec& spec, const BulkOptions& opts);
BulkResult run_goe_delocalization(int n, double nu, const BulkOptions& opts);
VerificationReport delocalization_report(const EnsembleSpec& spec, double kappa, int trials,
                                         std::uint64_t seed);

// |(1/(N+1)) sum_k 1/(H_kk - z - m_fc) - m_fc| for one matrix.
double concentration_statistic(const Matrix& h, Complex z, Complex m_fc);

struct ConcentrationResult {
  VerificationReport report;
  std::vector<double> deviations;  // raw, per trial
  double scale = 0.0;              // xi / q
};

ConcentrationResult run_concentration(const EnsembleSpec& spec, Complex z,
                                      const TrialOptions& opts, double bound = 5.0);
VerificationReport concentration_check(const EnsembleSpec& spec, Complex z, int trials,
                                       std::uint64_t seed);

struct GraphSumOptions : TrialOptions {
  int graphs = 50;
  int max_black = 3;
  int max_edges = 4;
  double eta = 0.5;
  double energy = 0.0;
  double c_star = 0.0;  // 0: solve the operational c_* on D1 (L = 5)
};

struct GraphSumResult {
  VerificationReport report;
  double c_star = 0.0;
  int samples_on_xi = 0;
  int samples_off_xi = 0;
  double worst_ratio = 0.0;  // max V / bound
  double max_resolvent_entry = 0.0;
};

// Samples G~^(k) and checks V(G, k) <= bound for random connected graphs.
GraphSumResult run_graph_sums(const EnsembleSpec& spec, const GraphSumOptions& opts);

}  // namespace laprmt

#endif  // LAPRMT_LOCALLAW_HPP_
