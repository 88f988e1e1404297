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

#include "laprmt/universality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "laprmt/error.hpp"
#include "laprmt/freeconv.hpp"
#include "laprmt/parallel.hpp"
#include "laprmt/rng.hpp"
#include "laprmt/special.hpp"

namespace laprmt {

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("KS distance needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_distance(const GapSample& a, const GapSample& b) {
  return ks_statistic(a.values, b.values);
}

GapSample normalized_gaps(const std::vector<Vector>& spectra, std::pair<int, int> window,
                          GapNormalization norm, const std::string& tag) {
  GapSample out;
  out.index_window = window;
  out.ensemble = tag;
  if (spectra.empty()) return out;
  const int n = static_cast<int>(spectra.front().size());
  const auto [lo, hi] = window;
  if (lo < 1 || hi > n || lo >= hi) throw InvalidArgument("gap window out of range");
  std::vector<double> scale(hi - lo);
  ClassicalLocations gamma;
  if (norm == GapNormalization::kFreeConvolution) gamma = classical_locations(n);
  for (int i = lo; i < hi; ++i) {
    const double rho = norm == GapNormalization::kFreeConvolution
                           ? density_fc(gamma.gamma[i - 1])
                           : semicircle_density(semicircle_quantile((i - 0.5) / n));
    scale[i - lo] = n * rho;
  }
  for (const Vector& lambda : spectra) {
    if (lambda.size() != n) throw DimensionMismatch("spectra of different sizes");
    for (int i = lo; i < hi; ++i) out.values.push_back(scale[i - lo] * (lambda(i) - lambda(i - 1)));
    out.trial_offsets.push_back(out.values.size());
  }
  return out;
}

GapSample gap_samples(const EnsembleSpec& spec, double kappa, const TrialOptions& opts,
                      GapNormalization norm) {
  spec.validate();
  const auto window = bulk_range(spec.n, kappa);
  const ProjectionBasis basis = projection_basis(spec.n);
  const auto spectra = parallel_map<Vector>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const LaplacianSample h = sample_laplacian_type(spec, derive_seed(opts.seed, t));
        return nontrivial_eigenvalues(h.h, basis);
      });
  return normalized_gaps(spectra, window, norm, "laplacian");
}

GapSample goe_reference(int n, double kappa, const TrialOptions& opts) {
  const auto window = bulk_range(n, kappa);
  const auto spectra = parallel_map<Vector>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        return symmetric_eigenvalues(sample_goe(n, derive_seed(opts.seed, t)));
      });
  return normalized_gaps(spectra, window, GapNormalization::kSemicircle, "goe");
}

GapSample concatenate(const GapSample& a, const GapSample& b) {
  GapSample out = a;
  out.ensemble = a.ensemble + "+" + b.ensemble;
  const std::size_t base = out.values.size();
  out.values.insert(out.values.end(), b.values.begin(), b.values.end());
  for (std::size_t t = 1; t < b.trial_offsets.size(); ++t) {
    out.trial_offsets.push_back(base + b.trial_offsets[t]);
  }
  return out;
}

std::vector<double> split_null_distribution(const GapSample& pooled, int splits,
                                            std::uint64_t seed) {
  const std::size_t trials = pooled.trials();
  if (trials < 2) throw InvalidArgument("null calibration needs at least two trials");
  std::vector<double> out;
  out.reserve(splits);
  std::vector<std::size_t> order(trials);
  for (int s = 0; s < splits; ++s) {
    std::iota(order.begin(), order.end(), 0);
    CounterStream rng(seed, StreamTag::kMisc, static_cast<std::uint64_t>(s));
    for (std::size_t k = trials - 1; k > 0; --k) {
      const auto r = static_cast<std::size_t>(rng.next_u64() % (k + 1));
      std::swap(order[k], order[r]);
    }
    std::vector<double> a, b;
    for (std::size_t k = 0; k < trials; ++k) {
      auto& dst = k < trials / 2 ? a : b;
      const std::size_t t = order[k];
      dst.insert(dst.end(), pooled.values.begin() + pooled.trial_offsets[t],
                 pooled.values.begin() + pooled.trial_offsets[t + 1]);
    }
    out.push_back(ks_statistic(std::move(a), std::move(b)));
  }
  return out;
}

double CorrelationEstimate::mass() const {
  double s = 0.0;
  for (double h : histogram) s += h * bin_width;
  return s;
}

namespace {

// Length of [a, b] intersected with [c, d].
double overlap(double a, double b, double c, double d) {
  return std::max(0.0, std::min(b, d) - std::max(a, c));
}

}  // namespace

CorrelationEstimate correlation_from_spectra(const std::vector<Vector>& spectra, int n,
                                             double density, const CorrelationOptions& opts) {
  if (opts.order != 1 && opts.order != 2) throw InvalidArgument("order must be 1 or 2");
  if (!(density > 0.0)) throw InvalidArgument("density at the center must be positive");
  if (!(opts.bin_width > 0.0 && opts.range > 0.0)) throw InvalidArgument("bad histogram grid");
  if (std::abs(opts.e_center) > opts.l) throw InvalidArgument("|E| must not exceed L");
  CorrelationEstimate est;
  est.e_center = opts.e_center;
  est.half_width = opts.half_width > 0.0 ? opts.half_width : std::pow(n, -0.9);
  est.delta = 1.0 + std::log(est.half_width) / std::log(static_cast<double>(n));
  if (!(est.delta > 0.0)) throw InvalidArgument("half width must satisfy b >= N^{-1+delta}, delta > 0");
  est.order = opts.order;
  est.bin_width = opts.bin_width;
  est.density = density;
  est.trials = static_cast<int>(spectra.size());
  est.alpha_min = opts.order == 1 ? -opts.range : 0.0;
  const double extent = opts.order == 1 ? 2.0 * opts.range : opts.range;
  const auto bins = static_cast<std::size_t>(std::llround(extent / opts.bin_width));
  est.histogram.assign(bins, 0.0);
  const double unit = 1.0 / (n * density);  // one rescaled unit in energy
  const double e_lo = est.e_center - est.half_width;
  const double e_hi = est.e_center + est.half_width;
  const double norm = 2.0 * est.half_width;
  for (const Vector& lambda : spectra) {
    for (Eigen::Index j = 0; j < lambda.size(); ++j) {
      const double x = lambda(j);
      if (opts.order == 1) {
        for (std::size_t k = 0; k < bins; ++k) {
          const double a0 = est.alpha_min + k * est.bin_width;
          // alpha = (x - E') / unit in [a0, a0 + w)  <=>  E' in (x - (a0 + w) unit, x - a0 unit]
          est.histogram[k] +=
              overlap(x - (a0 + est.bin_width) * unit, x - a0 * unit, e_lo, e_hi) / norm;
        }
      } else {
        const double weight = overlap(x - unit, x, e_lo, e_hi) / norm;
        if (weight == 0.0) continue;
        for (Eigen::Index k = j + 1; k < lambda.size(); ++k) {
          const double d = (lambda(k) - x) / unit;
          if (d >= opts.range) break;
          const auto bin = static_cast<std::size_t>(d / est.bin_width);
          if (bin < bins) est.histogram[bin] += weight;
        }
      }
    }
  }
  const double denom = est.trials * est.bin_width;
  for (double& h : est.histogram) h /= denom;
  return est;
}

CorrelationEstimate correlation_estimate(const EnsembleSpec& spec, const CorrelationOptions& c,
                                         const TrialOptions& opts) {
  spec.validate();
  const ProjectionBasis basis = projection_basis(spec.n);
  const auto spectra = parallel_map<Vector>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const LaplacianSample h = sample_laplacian_type(spec, derive_seed(opts.seed, t));
        return nontrivial_eigenvalues(h.h, basis);
      });
  return correlation_from_spectra(spectra, spec.n, density_fc(c.e_center), c);
}

CorrelationEstimate goe_correlation_estimate(int n, const CorrelationOptions& c,
                                             const TrialOptions& opts) {
  const auto spectra = parallel_map<Vector>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        return symmetric_eigenvalues(sample_goe(n, derive_seed(opts.seed, t)));
      });
  return correlation_from_spectra(spectra, n, semicircle_density(c.e_center), c);
}

double max_bin_discrepancy(const CorrelationEstimate& a, const CorrelationEstimate& b) {
  if (a.histogram.size() != b.histogram.size()) {
    throw DimensionMismatch("histograms have different binning");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.histogram.size(); ++k) {
    worst = std::max(worst, std::abs(a.histogram[k] - b.histogram[k]));
  }
  return worst;
}

GapExperimentResult run_gap_universality(const EnsembleSpec& spec,
                                         const GapExperimentOptions& opts) {
  GapExperimentResult res;
  TrialOptions t = opts;
  t.seed = derive_seed(opts.seed, 0);
  res.laplacian = gap_samples(spec, opts.kappa, t);
  t.seed = derive_seed(opts.seed, 1);
  res.goe = goe_reference(spec.n, opts.kappa, t);
  t.seed = derive_seed(opts.seed, 2);
  res.goe_null = goe_reference(spec.n, opts.kappa, t);
  res.ks = ks_distance(res.laplacian, res.goe);
  res.null_ks = ks_distance(res.goe, res.goe_null);
  const std::vector<double> null_dist = split_null_distribution(
      concatenate(res.goe, res.goe_null), opts.null_splits, derive_seed(opts.seed, 3));
  res.null95 = quantile(null_dist, 0.95);
  res.threshold = std::max(opts.ks_floor, res.null95);

  VerificationReport& rep = res.report;
  rep.name = "gaps";
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.stats["n"] = spec.n;
  rep.stats["q"] = spec.q;
  rep.stats["window"] = {res.laplacian.index_window.first, res.laplacian.index_window.second};
  rep.stats["gaps_per_sample"] = res.laplacian.values.size();
  rep.stats["mean_gap_laplacian"] = mean(res.laplacian.values);
  rep.stats["mean_gap_goe"] = mean(res.goe.values);
  rep.stats["ks_laplacian_vs_goe"] = res.ks;
  rep.stats["ks_goe_vs_goe"] = res.null_ks;
  rep.stats["null_splits"] = opts.null_splits;
  rep.stats["null_q95"] = res.null95;
  rep.stats["threshold"] = res.threshold;
  rep.check_le("ks_laplacian_vs_goe", res.ks, res.threshold);
  rep.check_le("ks_goe_vs_goe", res.null_ks, opts.null_self_bound);
  return res;
}

CorrelationExperimentResult run_correlations(const EnsembleSpec& spec,
                                             const CorrelationOptions& c,
                                             const TrialOptions& opts, double bound) {
  CorrelationExperimentResult res;
  TrialOptions t = opts;
  t.seed = derive_seed(opts.seed, 0);
  res.laplacian = correlation_estimate(spec, c, t);
  t.seed = derive_seed(opts.seed, 1);
  res.goe = goe_correlation_estimate(spec.n, c, t);
  res.discrepancy = max_bin_discrepancy(res.laplacian, res.goe);
  VerificationReport& rep = res.report;
  rep.name = "correlations";
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.stats["n"] = spec.n;
  rep.stats["q"] = spec.q;
  rep.stats["order"] = c.order;
  rep.stats["e_center"] = res.laplacian.e_center;
  rep.stats["half_width"] = res.laplacian.half_width;
  rep.stats["delta"] = res.laplacian.delta;
  rep.stats["mass_laplacian"] = res.laplacian.mass();
  rep.stats["mass_goe"] = res.goe.mass();
  rep.stats["first_bin_laplacian"] = res.laplacian.histogram.front();
  rep.stats["first_bin_goe"] = res.goe.histogram.front();
  rep.stats["max_bin_discrepancy"] = res.discrepancy;
  rep.check_le("max_bin_discrepancy", res.discrepancy, bound);
  return res;
}

}  // namespace laprmt
