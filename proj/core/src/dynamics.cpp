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

#include "laprmt/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/beta.hpp>

#include "laprmt/error.hpp"
#include "laprmt/freeconv.hpp"
#include "laprmt/parallel.hpp"
#include "laprmt/rng.hpp"
#include "laprmt/universality.hpp"

namespace laprmt {

FlowParams FlowParams::from_epsilon(int n, double epsilon) {
  FlowParams p;
  p.epsilon = epsilon;
  p.t = std::pow(static_cast<double>(n), -1.0 + epsilon);
  return p;
}

void FlowParams::validate() const {
  if (!(t >= 0.0)) throw InvalidArgument("flow time must be >= 0");
}

void DeformationHandle::validate(int size) const {
  if (!(i < j)) throw InvalidArgument("deformation handle needs i < j");
  if (i < 0 || j >= size) throw InvalidArgument("deformation index out of range");
  if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in [0, 1]");
}

LaplacianSample evolve(const LaplacianSample& h0, double t, std::uint64_t seed) {
  if (!(t >= 0.0)) throw InvalidArgument("flow time must be >= 0");
  LaplacianSample out = h0;
  if (t == 0.0) return out;
  const int n = h0.n();
  EnsembleSpec w_spec;
  w_spec.n = n;
  w_spec.q = std::sqrt(static_cast<double>(n));
  w_spec.entry_law = EntryLaw::kGaussian;
  const LaplacianSample w = sample_laplacian_type(w_spec, seed);
  const double a = std::exp(-t / 2.0);
  const double s = std::sqrt(-std::expm1(-t));
  out.h = a * h0.h + s * w.h;
  rebuild_diagonal(out.h);
  out.degenerate = false;
  return out;
}

LaplacianSample evolve_path(const LaplacianSample& h0, double t, int steps,
                            std::uint64_t seed, double noise_scale) {
  if (steps < 1) throw InvalidArgument("steps must be >= 1");
  if (!(t >= 0.0)) throw InvalidArgument("flow time must be >= 0");
  LaplacianSample out = h0;
  const int size = h0.size();
  const double dt = t / steps;
  const double decay = 1.0 - dt / 2.0;
  const double kick = noise_scale * std::sqrt(dt / h0.n());
  std::vector<CounterStream> rows;
  rows.reserve(size);
  for (int i = 0; i < size; ++i) rows.emplace_back(seed, StreamTag::kPathNoise, i);
  for (int step = 0; step < steps; ++step) {
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) {
        double x = decay * out.h(i, j);
        if (noise_scale != 0.0) x += kick * rows[i].normal();
        out.h(i, j) = x;
        out.h(j, i) = x;
      }
    }
  }
  rebuild_diagonal(out.h);
  out.degenerate = false;
  return out;
}

HatDecomposition hat_decomposition(const LaplacianSample& h, double t, std::uint64_t seed,
                                   const ProjectionBasis& basis) {
  if (!(t >= 0.0)) throw InvalidArgument("flow time must be >= 0");
  HatDecomposition out;
  const Matrix rhr = project_out_trivial(h.h, basis);
  if (t == 0.0) {
    out.a_hat = rhr;
    out.h_hat = rhr;
    return out;
  }
  out.s = std::sqrt(-std::expm1(-t));
  const DecompositionParts parts = sample_decomposition_parts(h.n(), seed);
  out.a_hat = std::exp(-t / 2.0) * rhr + out.s * project_diagonal(parts.d, basis);
  out.a_hat.diagonal().array() += out.s * parts.g;
  out.h_hat = out.a_hat + out.s * parts.goe;
  return out;
}

HatDecomposition hat_decomposition(const LaplacianSample& h, double t, std::uint64_t seed) {
  return hat_decomposition(h, t, seed, projection_basis(h.n()));
}

Matrix laplacian_direction(int i, int j, int size) {
  if (i == j) throw InvalidArgument("direction needs distinct indices");
  if (i < 0 || j < 0 || i >= size || j >= size) throw InvalidArgument("index out of range");
  Matrix x = Matrix::Zero(size, size);
  x(i, j) = x(j, i) = 1.0;
  x(i, i) = x(j, j) = -1.0;
  return x;
}

Complex trace_derivative(const Matrix& h, Complex z, int i, int j, int r,
                         const ProjectionBasis& basis, double direction_scale) {
  if (r < 1 || r > 3) throw InvalidArgument("derivative order must be 1, 2 or 3");
  const CMatrix g = resolvent_hat(h, z, basis, false).g;
  const CMatrix x = (direction_scale * laplacian_direction(i, j, static_cast<int>(h.rows())))
                        .cast<Complex>();
  CMatrix prod = g;
  for (int k = 0; k < r; ++k) prod = (prod * x * g).eval();
  double factorial = 1.0;
  for (int k = 2; k <= r; ++k) factorial *= k;
  return (r % 2 ? -1.0 : 1.0) * factorial * prod.trace();
}

Complex trace_derivative(const Matrix& h, Complex z, int i, int j, int r) {
  return trace_derivative(h, z, i, j, r, projection_basis(static_cast<int>(h.rows()) - 1));
}

Complex trace_hat(const Matrix& h, Complex z, const ProjectionBasis& basis) {
  if (!(z.imag() > 0.0)) throw InvalidPoint("spectral parameter must have Im z > 0");
  CMatrix a = project_out_trivial(h, basis).cast<Complex>();
  a.diagonal().array() -= z;
  return a.partialPivLu().inverse().trace();
}

double default_fd_step(int r) {
  switch (r) {
    case 1: return 1e-5;
    case 2: return 1e-3;
    case 3: return 5e-3;
    default: throw InvalidArgument("derivative order must be 1, 2 or 3");
  }
}

Complex trace_derivative_fd(const Matrix& h, Complex z, int i, int j, int r,
                            const ProjectionBasis& basis, double step) {
  const double s = step > 0.0 ? step : default_fd_step(r);
  const Matrix x = laplacian_direction(i, j, static_cast<int>(h.rows()));
  auto f = [&](int k) { return trace_hat(h + (k * s) * x, z, basis); };
  switch (r) {
    case 1:
      return (f(1) - f(-1)) / (2.0 * s);
    case 2:
      return (-f(2) + 16.0 * f(1) - 30.0 * f(0) + 16.0 * f(-1) - f(-2)) / (12.0 * s * s);
    case 3:
      return (f(-3) - 8.0 * f(-2) + 13.0 * f(-1) - 13.0 * f(1) + 8.0 * f(2) - f(3)) /
             (8.0 * s * s * s);
    default:
      throw InvalidArgument("derivative order must be 1, 2 or 3");
  }
}

double level_repulsion_q(const Vector& lambda, int i) {
  const auto n = lambda.size();
  if (i < 0 || i >= n) throw InvalidArgument("eigenvalue index out of range");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == i) continue;
    const double d = lambda(j) - lambda(i);
    sum += 1.0 / (d * d);
  }
  return sum / (static_cast<double>(n) * n);
}

double level_repulsion_q(const Spectrum& s, int i) {
  if (!s.trivial_removed) throw InvalidArgument("Q_i needs the nontrivial spectrum");
  return level_repulsion_q(s.eigenvalues, i);
}

namespace {

// Quintic smoothstep and its antiderivative on [0, 1].
double smoothstep(double u) { return u * u * u * (10.0 - 15.0 * u + 6.0 * u * u); }
double smoothstep_integral(double u) {
  const double u4 = u * u * u * u;
  return u4 * (2.5 - 3.0 * u + u * u);
}

}  // namespace

double chi_cutoff(double x, double a) {
  if (!(a > 0.0)) throw InvalidArgument("cutoff scale must be positive");
  if (x <= a) return x;
  const double u = std::min((x - a) / a, 1.0);
  return a + a * (u - smoothstep_integral(u));
}

double chi_cutoff_derivative(double x, double a, int order) {
  if (!(a > 0.0)) throw InvalidArgument("cutoff scale must be positive");
  if (order < 1 || order > 3) throw InvalidArgument("derivative order must be 1, 2 or 3");
  if (x <= a) return order == 1 ? 1.0 : 0.0;
  if (x >= 2.0 * a) return 0.0;
  const double u = (x - a) / a;
  switch (order) {
    case 1: return 1.0 - smoothstep(u);
    case 2: return -30.0 * u * u * (1.0 - u) * (1.0 - u) / a;
    default: return -60.0 * u * (1.0 - u) * (1.0 - 2.0 * u) / (a * a);
  }
}

LaplacianSample deform(const LaplacianSample& h, const DeformationHandle& d) {
  d.validate(h.size());
  LaplacianSample out = h;
  out.h(d.i, d.j) *= d.theta;
  out.h(d.j, d.i) = out.h(d.i, d.j);
  rebuild_diagonal(out.h);
  return out;
}

std::pair<double, double> clopper_pearson(std::int64_t k, std::int64_t n, double confidence) {
  if (n < 1 || k < 0 || k > n) throw InvalidArgument("need 0 <= k <= n, n >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw InvalidArgument("confidence in (0, 1)");
  // One-sided limits at the given confidence level.
  const double alpha = 1.0 - confidence;
  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  const double lo =
      k == 0 ? 0.0 : boost::math::quantile(boost::math::beta_distribution<>(kk, nn - kk + 1), alpha);
  const double hi = k == n ? 1.0
                           : boost::math::quantile(
                                 boost::math::beta_distribution<>(kk + 1, nn - kk), 1.0 - alpha);
  return {lo, hi};
}

RepulsionResult run_level_repulsion(const EnsembleSpec& spec, const RepulsionOptions& opts) {
  spec.validate();
  if (opts.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (!(opts.tau > 0.0)) throw InvalidArgument("tau must be positive");
  const int n = spec.n;
  const int i = opts.index >= 0 ? opts.index : n / 2 - 1;
  if (i < 0 || i + 1 >= n) throw InvalidArgument("gap index out of range");
  RepulsionResult res;
  res.threshold = std::pow(static_cast<double>(n), -1.0 - opts.tau);
  res.bound = std::pow(static_cast<double>(n), -opts.tau / 2.0);
  const ProjectionBasis basis = projection_basis(n);
  struct Out {
    double gap, q;
  };
  const auto outs = parallel_map<Out>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const LaplacianSample h = sample_laplacian_type(spec, derive_seed(opts.seed, t));
        const Vector lambda = nontrivial_eigenvalues(h.h, basis);
        return Out{lambda(i + 1) - lambda(i), level_repulsion_q(lambda, i)};
      });
  for (const auto& o : outs) {
    res.gaps.push_back(o.gap);
    res.q_values.push_back(o.q);
    if (std::abs(o.gap) <= res.threshold) ++res.hits;
  }
  res.upper_limit = clopper_pearson(res.hits, opts.trials, opts.confidence).second;
  VerificationReport& rep = res.report;
  rep.name = "repulsion";
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.stats["n"] = n;
  rep.stats["q"] = spec.q;
  rep.stats["tau"] = opts.tau;
  rep.stats["gap_index"] = i + 1;
  rep.stats["threshold"] = res.threshold;
  rep.stats["hits"] = res.hits;
  rep.stats["empirical_probability"] = static_cast<double>(res.hits) / opts.trials;
  rep.stats["upper_confidence_limit"] = res.upper_limit;
  rep.stats["confidence"] = opts.confidence;
  Json q;
  q["median"] = median(res.q_values);
  q["q90"] = quantile(res.q_values, 0.9);
  q["q99"] = quantile(res.q_values, 0.99);
  rep.stats["Q_i"] = q;
  rep.check_le("upper_limit_vs_N^{-tau/2}", res.upper_limit, res.bound);
  return res;
}

FlowResult run_flow(const EnsembleSpec& spec, const FlowOptions& opts) {
  spec.validate();
  if (opts.trials < 1) throw InvalidArgument("trials must be >= 1");
  const int n = spec.n;
  FlowResult res;
  res.t = opts.t > 0.0 ? opts.t : FlowParams::from_epsilon(n, opts.epsilon).t;
  const ProjectionBasis basis = projection_basis(n);

  if (opts.schedule < 1) throw InvalidArgument("schedule must be >= 1");
  const int mid = n / 2 - 1;
  if (mid < 0) throw InvalidArgument("flow needs n >= 2");
  const double gap_scale = n * density_fc(classical_locations(n).gamma[mid]);
  struct Out {
    Vector evolved, hat;
    double sum_sq = 0.0, sum_quartic = 0.0;
    std::vector<double> gap, q;  // per schedule point
  };
  const auto outs = parallel_map<Out>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const std::uint64_t s = derive_seed(opts.seed, t);
        const LaplacianSample h = sample_laplacian_type(spec, derive_seed(s, 0));
        const LaplacianSample ht = evolve(h, res.t, derive_seed(s, 1));
        const HatDecomposition hat = hat_decomposition(h, res.t, derive_seed(s, 2), basis);
        Out o;
        o.evolved = nontrivial_eigenvalues(ht.h, basis);
        o.hat = symmetric_eigenvalues(hat.h_hat);
        for (int k = 1; k <= opts.schedule; ++k) {
          const Vector lam =
              k == opts.schedule
                  ? o.evolved
                  : nontrivial_eigenvalues(
                        evolve(h, res.t * k / opts.schedule, derive_seed(s, 3, k)).h, basis);
          o.gap.push_back(gap_scale * (lam(mid + 1) - lam(mid)));
          o.q.push_back(level_repulsion_q(lam, mid));
        }
        for (int i = 0; i <= n; ++i) {
          for (int j = i + 1; j <= n; ++j) {
            const double x2 = ht.h(i, j) * ht.h(i, j);
            o.sum_sq += x2;
            o.sum_quartic += x2 * x2;
          }
        }
        return o;
      });

  std::vector<double> pooled_e, pooled_h;
  std::vector<double> m1_e, m1_h, m2_e, m2_h;
  double sum_sq = 0.0, sum_quartic = 0.0;
  for (const auto& o : outs) {
    pooled_e.insert(pooled_e.end(), o.evolved.data(), o.evolved.data() + o.evolved.size());
    pooled_h.insert(pooled_h.end(), o.hat.data(), o.hat.data() + o.hat.size());
    m1_e.push_back(o.evolved.mean());
    m1_h.push_back(o.hat.mean());
    m2_e.push_back(o.evolved.squaredNorm() / n);
    m2_h.push_back(o.hat.squaredNorm() / n);
    sum_sq += o.sum_sq;
    sum_quartic += o.sum_quartic;
  }
  for (int k = 0; k < opts.schedule; ++k) {
    std::vector<double> gaps, qs;
    for (const auto& o : outs) {
      gaps.push_back(o.gap[k]);
      qs.push_back(o.q[k]);
    }
    res.per_time.push_back(
        {res.t * (k + 1) / opts.schedule, mean(gaps), median(qs), quantile(qs, 0.9)});
  }
  res.ks = ks_statistic(pooled_e, pooled_h);
  const double entries = static_cast<double>(opts.trials) * n * (n + 1) / 2.0;
  res.variance = sum_sq / entries;
  const double var_of_square = sum_quartic / entries - res.variance * res.variance;
  res.variance_se = std::sqrt(std::max(var_of_square, 0.0) / entries);
  res.evolved_moments = {mean(m1_e), mean(m2_e)};
  res.hat_moments = {mean(m1_h), mean(m2_h)};

  VerificationReport& rep = res.report;
  rep.name = "flow";
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.stats["n"] = n;
  rep.stats["q"] = spec.q;
  rep.stats["t"] = res.t;
  rep.stats["ks_evolved_vs_hat"] = res.ks;
  rep.stats["entry_variance"] = res.variance;
  rep.stats["entry_variance_target"] = 1.0 / n;
  rep.stats["entry_variance_se"] = res.variance_se;
  rep.stats["moments_evolved"] = res.evolved_moments;
  rep.stats["moments_hat"] = res.hat_moments;
  rep.check_le("pooled_ks", res.ks, opts.ks_bound);
  rep.check_le("entry_variance_sigmas", std::abs(res.variance - 1.0 / n) / res.variance_se,
               opts.sigma_bound);
  const double se1 = std::hypot(standard_error(m1_e), standard_error(m1_h));
  const double se2 = std::hypot(standard_error(m2_e), standard_error(m2_h));
  rep.check_le("first_moment_sigmas",
               std::abs(res.evolved_moments[0] - res.hat_moments[0]) / se1, opts.sigma_bound);
  rep.check_le("second_moment_sigmas",
               std::abs(res.evolved_moments[1] - res.hat_moments[1]) / se2, opts.sigma_bound);
  return res;
}

namespace {

struct MomentBlock {
  std::vector<double> sum, sum_sq;  // products of entry pairs, upper-triangular pair index
};

std::size_t pair_count(std::size_t m) { return m * (m + 1) / 2; }

// Upper-triangular entries of a symmetric matrix in row-major order.
std::vector<double> upper_entries(const Matrix& a) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i; j < a.cols(); ++j) out.push_back(a(i, j));
  }
  return out;
}

std::vector<std::pair<int, int>> upper_indices(int size) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) out.emplace_back(i, j);
  }
  return out;
}

void accumulate(MomentBlock& b, const std::vector<double>& x) {
  std::size_t p = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t c = a; c < x.size(); ++c, ++p) {
      const double v = x[a] * x[c];
      b.sum[p] += v;
      b.sum_sq[p] += v * v;
    }
  }
}

// Largest |empirical - oracle| / standard error over all entry pairs.
template <typename Oracle>
double max_sigmas(const MomentBlock& b, double samples, const std::vector<std::pair<int, int>>& idx,
                  Oracle oracle) {
  double worst = 0.0;
  std::size_t p = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t c = a; c < idx.size(); ++c, ++p) {
      const double m = b.sum[p] / samples;
      const double se = std::sqrt(std::max(b.sum_sq[p] / samples - m * m, 0.0) / samples);
      const double target = oracle(idx[a].first, idx[a].second, idx[c].first, idx[c].second);
      const double diff = std::abs(m - target);
      worst = std::max(worst, se > 0.0 ? diff / se : (diff > 1e-12 ? HUGE_VAL : 0.0));
    }
  }
  return worst;
}

}  // namespace

DecompositionResult run_decomposition(int n, const DecompositionOptions& opts) {
  if (n < 2 || opts.cov_n < 2) throw InvalidArgument("dimensions must be >= 2");
  if (opts.trials < 1 || opts.cov_samples < 1) throw InvalidArgument("trials must be >= 1");
  DecompositionResult res;
  const int cn = opts.cov_n;
  const ProjectionBasis cov_basis = projection_basis(cn);
  EnsembleSpec w_small;
  w_small.n = cn;
  w_small.q = std::sqrt(static_cast<double>(cn));
  w_small.entry_law = EntryLaw::kGaussian;
  const auto idx_w = upper_indices(cn + 1);
  const auto idx_p = upper_indices(cn);

  // Fixed blocks keep the floating-point reduction order thread-independent.
  const std::int64_t blocks = 64;
  const std::uint64_t cov_seed = derive_seed(opts.seed, 0);
  struct Pair {
    MomentBlock w, p;
  };
  const auto parts = parallel_map<Pair>(
      static_cast<std::size_t>(blocks), opts.threads, [&](std::size_t blk) {
        Pair out;
        out.w.sum.assign(pair_count(idx_w.size()), 0.0);
        out.w.sum_sq = out.w.sum;
        out.p.sum.assign(pair_count(idx_p.size()), 0.0);
        out.p.sum_sq = out.p.sum;
        for (std::int64_t s = static_cast<std::int64_t>(blk); s < opts.cov_samples; s += blocks) {
          const LaplacianSample w = sample_laplacian_type(w_small, derive_seed(cov_seed, s));
          accumulate(out.w, upper_entries(w.h));
          accumulate(out.p, upper_entries(project_out_trivial(w.h, cov_basis)));
        }
        return out;
      });
  Pair total = parts.front();
  for (std::size_t b = 1; b < parts.size(); ++b) {
    for (std::size_t k = 0; k < total.w.sum.size(); ++k) {
      total.w.sum[k] += parts[b].w.sum[k];
      total.w.sum_sq[k] += parts[b].w.sum_sq[k];
    }
    for (std::size_t k = 0; k < total.p.sum.size(); ++k) {
      total.p.sum[k] += parts[b].p.sum[k];
      total.p.sum_sq[k] += parts[b].p.sum_sq[k];
    }
  }
  const double samples = static_cast<double>(opts.cov_samples);
  res.max_entry_sigmas = max_sigmas(total.w, samples, idx_w, [&](int i, int j, int k, int l) {
    return entry_covariance_oracle(i, j, k, l, cn);
  });
  res.max_projected_sigmas = max_sigmas(total.p, samples, idx_p, [&](int a, int b, int c, int d) {
    return projected_covariance_oracle(a, b, c, d, cov_basis);
  });

  const ProjectionBasis basis = projection_basis(n);
  EnsembleSpec w_spec;
  w_spec.n = n;
  w_spec.q = std::sqrt(static_cast<double>(n));
  w_spec.entry_law = EntryLaw::kGaussian;
  const std::uint64_t ks_seed = derive_seed(opts.seed, 1);
  struct Spectra {
    Vector projected, decomposed;
  };
  const auto spectra = parallel_map<Spectra>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const LaplacianSample w = sample_laplacian_type(w_spec, derive_seed(ks_seed, t, 0));
        return Spectra{nontrivial_eigenvalues(w.h, basis),
                       symmetric_eigenvalues(decompose_gaussian(n, derive_seed(ks_seed, t, 1), basis))};
      });
  std::vector<double> a, b;
  for (const auto& s : spectra) {
    a.insert(a.end(), s.projected.data(), s.projected.data() + s.projected.size());
    b.insert(b.end(), s.decomposed.data(), s.decomposed.data() + s.decomposed.size());
  }
  res.ks = ks_statistic(std::move(a), std::move(b));

  VerificationReport& rep = res.report;
  rep.name = "decompose";
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.stats["n"] = n;
  rep.stats["cov_n"] = cn;
  rep.stats["cov_samples"] = opts.cov_samples;
  rep.stats["entry_pairs"] = pair_count(idx_w.size());
  rep.stats["projected_pairs"] = pair_count(idx_p.size());
  rep.stats["max_entry_sigmas"] = res.max_entry_sigmas;
  rep.stats["max_projected_sigmas"] = res.max_projected_sigmas;
  rep.stats["pooled_ks"] = res.ks;
  rep.check_le("entry_covariance_sigmas", res.max_entry_sigmas, opts.sigma_bound);
  rep.check_le("projected_covariance_sigmas", res.max_projected_sigmas, opts.sigma_bound);
  rep.check_le("pooled_ks", res.ks, opts.ks_bound);
  return res;
}

}  // namespace laprmt
