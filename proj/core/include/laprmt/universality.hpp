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


#ifndef LAPRMT_UNIVERSALITY_HPP_
#define LAPRMT_UNIVERSALITY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "laprmt/ensemble.hpp"
#include "laprmt/locallaw.hpp"
#include "laprmt/report.hpp"

namespace laprmt {

enum class GapNormalization { kFreeConvolution, kSemicircle };

struct GapSample {
  std::vector<double> values;
  std::pair<int, int> index_window{0, 0};  // 1-based, inclusive
  std::string ensemble;
  // Gaps grouped by trial: values[trial_offsets[t] .. trial_offsets[t+1]).
  std::vector<std::size_t> trial_offsets{0};

  std::size_t trials() const { return trial_offsets.size() - 1; }
};

// Two-sample Kolmogorov-Smirnov statistic, exact on the step CDFs.
double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_distance(const GapSample& a, const GapSample& b);

// Normalized gaps N rho(gamma_i) (lambda_{i+1} - lambda_i) for i in [lo, hi).
GapSample normalized_gaps(const std::vector<Vector>& spectra, std::pair<int, int> window,
                          GapNormalization norm, const std::string& tag);

GapSample gap_samples(const EnsembleSpec& spec, double kappa, const TrialOptions& opts,
                      GapNormalization norm = GapNormalization::kFreeConvolution);
GapSample goe_reference(int n, double kappa, const TrialOptions& opts);

// Trial-level random splits of a pooled sample; returns the KS distances.
std::vector<double> split_null_distribution(const GapSample& pooled, int splits,
                                            std::uint64_t seed);
GapSample concatenate(const GapSample& a, const GapSample& b);

struct CorrelationEstimate {
  double e_center = 0.0;
  double half_width = 0.0;
  double delta = 0.0;  // half_width = N^{-1+delta}
  int order = 1;
  double bin_width = 0.1;
  double alpha_min = 0.0;
  std::vector<double> histogram;
  double density = 0.0;  // rho at e_center used for the rescaling
  int trials = 0;

  double bin_center(std::size_t k) const { return alpha_min + (k + 0.5) * bin_width; }
  double mass() const;  // sum of histogram * bin_width
};

struct CorrelationOptions {
  double e_center = 0.0;
  double half_width = 0.0;  // 0 selects N^{-0.9}
  int order = 1;
  double bin_width = 0.1;
  double range = 3.0;  // alpha extent of the histogram
  double l = 5.0;
};

// Averages over centers E' uniform in [E - b, E + b] exactly, per eigenvalue.
// order 1: rescaled density on alpha in [-range, range).
// order 2: pair function in the separation d in [0, range) for a reference
//          eigenvalue with alpha in [0, 1).
CorrelationEstimate correlation_from_spectra(const std::vector<Vector>& spectra, int n,
                                             double density, const CorrelationOptions& opts);
CorrelationEstimate correlation_estimate(const EnsembleSpec& spec, const CorrelationOptions& c,
                                         const TrialOptions& opts);
CorrelationEstimate goe_correlation_estimate(int n, const CorrelationOptions& c,
                                             const TrialOptions& opts);
double max_bin_discrepancy(const CorrelationEstimate& a, const CorrelationEstimate& b);

struct GapExperimentResult {
  VerificationReport report;
  GapSample laplacian;
  GapSample goe;
  GapSample goe_null;
  double ks = 0.0;
  double null_ks = 0.0;
  double null95 = 0.0;
  double threshold = 0.0;
};

struct GapExperimentOptions : TrialOptions {
  double kappa = 0.45;
  int null_splits = 200;
  double ks_floor = 0.05;
  double null_self_bound = 0.03;
};

GapExperimentResult run_gap_universality(const EnsembleSpec& spec,
                                         const GapExperimentOptions& opts);

struct CorrelationExperimentResult {
  VerificationReport report;
  CorrelationEstimate laplacian;
  CorrelationEstimate goe;
  double discrepancy = 0.0;
};

CorrelationExperimentResult run_correlations(const EnsembleSpec& spec,
                                             const CorrelationOptions& c,
                                             const TrialOptions& opts, double bound = 0.1);

}  // namespace laprmt

#endif  // LAPRMT_UNIVERSALITY_HPP_
