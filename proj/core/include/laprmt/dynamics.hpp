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


#ifndef LAPRMT_DYNAMICS_HPP_
#define LAPRMT_DYNAMICS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "laprmt/ensemble.hpp"
#include "laprmt/locallaw.hpp"
#include "laprmt/report.hpp"
#include "laprmt/spectra.hpp"

namespace laprmt {

struct FlowParams {
  double t = 0.0;
  double epsilon = 0.0;

  // t = N^{-1+epsilon}.
  static FlowParams from_epsilon(int n, double epsilon);
  void validate() const;
};

struct DeformationHandle {
  int i = 0;
  int j = 1;
  double theta = 1.0;

  void validate(int size) const;
};

// e^{-t/2} H0 + (1 - e^{-t})^{1/2} W with a fresh Gaussian Laplacian W.
LaplacianSample evolve(const LaplacianSample& h0, double t, std::uint64_t seed);

// Euler-Maruyama for dh = dB/sqrt(N) - h dt / 2 on the off-diagonal entries.
// noise_scale = 0 gives the drift-only recursion.
LaplacianSample evolve_path(const LaplacianSample& h0, double t, int steps,
                            std::uint64_t seed, double noise_scale = 1.0);

struct HatDecomposition {
  Matrix a_hat;  // e^{-t/2} R^T H R + s (R^T D R + g I)
  Matrix h_hat;  // a_hat + s GOE
  double s = 0.0;  // (1 - e^{-t})^{1/2}
};

HatDecomposition hat_decomposition(const LaplacianSample& h, double t, std::uint64_t seed,
                                   const ProjectionBasis& basis);
HatDecomposition hat_decomposition(const LaplacianSample& h, double t, std::uint64_t seed);

// X_ij = E^ij + E^ji - E^ii - E^jj.
Matrix laplacian_direction(int i, int j, int size);

// (-1)^r r! Tr[G_hat (X_ij G_hat)^r], the r-th derivative of Tr G_hat along X_ij.
Complex trace_derivative(const Matrix& h, Complex z, int i, int j, int r,
                         const ProjectionBasis& basis, double direction_scale = 1.0);
Complex trace_derivative(const Matrix& h, Complex z, int i, int j, int r);

// Tr G_hat(H + s X_ij) = Tr (R^T (H + s X_ij) R - z)^{-1}.
Complex trace_hat(const Matrix& h, Complex z, const ProjectionBasis& basis);

// Central finite-difference estimate of the same derivative. Default steps
// are 1e-5 (r=1), 1e-3 (r=2) and 5e-3 (r=3).
Complex trace_derivative_fd(const Matrix& h, Complex z, int i, int j, int r,
                            const ProjectionBasis& basis, double step = 0.0);
double default_fd_step(int r);

// Q_i = N^{-2} sum_{j != i} (lambda_j - lambda_i)^{-2}; i is 0-based in the
// nontrivial spectrum.
double level_repulsion_q(const Vector& lambda, int i);
double level_repulsion_q(const Spectrum& s, int i);

// C^3 cutoff: x on [0, a], constant 3a/2 beyond 2a.
double chi_cutoff(double x, double a);
double chi_cutoff_derivative(double x, double a, int order);

LaplacianSample deform(const LaplacianSample& h, const DeformationHandle& d);

// Clopper-Pearson interval for k successes out of n trials.
std::pair<double, double> clopper_pearson(std::int64_t k, std::int64_t n, double confidence);

struct RepulsionOptions : TrialOptions {
  double tau = 0.2;
  double confidence = 0.95;
  int index = -1;  // 0-based gap index; -1 selects the middle of the spectrum
};

struct RepulsionResult {
  VerificationReport report;
  std::int64_t hits = 0;
  double threshold = 0.0;     // N^{-1-tau}
  double bound = 0.0;         // N^{-tau/2}
  double upper_limit = 0.0;   // one-sided upper confidence limit
  std::vector<double> gaps;   // per trial
  std::vector<double> q_values;
};

RepulsionResult run_level_repulsion(const EnsembleSpec& spec, const RepulsionOptions& opts);

struct FlowOptions : TrialOptions {
  double t = 0.0;  // <= 0 selects N^{-1+epsilon}
  double epsilon = 0.3;
  double ks_bound = 0.02;
  double sigma_bound = 5.0;
  int schedule = 4;  // gap and Q statistics at t k / schedule, k = 1..schedule
};

struct FlowTimeRow {
  double t = 0.0;
  double mean_gap = 0.0;  // middle gap, normalized by N rho_fc(gamma)
  double q_median = 0.0;
  double q_q90 = 0.0;
};

struct FlowResult {
  VerificationReport report;
  double ks = 0.0;
  double variance = 0.0;
  double variance_se = 0.0;
  double t = 0.0;
  std::vector<double> evolved_moments;  // first, second
  std::vector<double> hat_moments;
  std::vector<FlowTimeRow> per_time;
};

struct DecompositionOptions : TrialOptions {
  int cov_n = 5;
  std::int64_t cov_samples = 200000;
  double sigma_bound = 5.0;
  double ks_bound = 0.02;
};

struct DecompositionResult {
  VerificationReport report;
  double ks = 0.0;
  double max_entry_sigmas = 0.0;      // W against the entry covariance
  double max_projected_sigmas = 0.0;  // R^T W R against its covariance
};

// Covariances at cov_n, then pooled-eigenvalue KS between R^T W R and
// GOE + R^T D R + g I at dimension n.
DecompositionResult run_decomposition(int n, const DecompositionOptions& opts);

// Same H per trial; evolve and the hat construction draw independent noise.
FlowResult run_flow(const EnsembleSpec& spec, const FlowOptions& opts);

}  // namespace laprmt

#endif  // LAPRMT_DYNAMICS_HPP_
