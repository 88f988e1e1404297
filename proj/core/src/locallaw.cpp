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

#include "laprmt/locallaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "laprmt/error.hpp"
#include "laprmt/parallel.hpp"
#include "laprmt/rng.hpp"

namespace laprmt {
namespace {

Json summarize(const std::vector<double>& v) {
  Json j;
  j["median"] = median(v);
  j["q95"] = quantile(v, 0.95);
  j["max"] = max_of(v);
  return j;
}

// Smallest constant of the sweep for which all values fall below C * scale.
double smallest_passing_constant(double worst_normalized) {
  for (double c : kConstantSweep) {
    if (worst_normalized <= c) return c;
  }
  return std::numeric_limits<double>::infinity();
}

Json constant_or_null(double c) { return std::isfinite(c) ? Json(c) : Json(nullptr); }

struct TrialDefects {
  std::vector<double> defect;    // |m_N - m_fc| per point
  std::vector<double> diagonal;  // entrywise diagonal defect per point
  double offdiagonal = 0.0;
};

}  // namespace

LocalLawResult run_locallaw(const EnsembleSpec& spec, const SpectralDomain& domain,
                            const LocalLawOptions& opts) {
  spec.validate();
  if (opts.trials < 1) throw InvalidArgument("trials must be >= 1");
  const auto& pts = domain.points;
  const std::size_t np = pts.size();
  const int n = spec.n;
  const double xi = domain.xi;

  const std::vector<Complex> mfc = parallel_map<Complex>(
      np, opts.threads, [&](std::size_t p) { return solve_mfc(pts[p].z, opts.solver); });
  std::vector<double> xi_psi(np);
  for (std::size_t p = 0; p < np; ++p) xi_psi[p] = xi * control_psi(pts[p].z, n, spec.q);

  // Off-diagonal entries are sampled on a few rows at E = 0.
  const std::vector<int> probe_rows{0, n / 2, n};
  const std::vector<Complex> probe_z{{0.0, domain.eta_min()}, {0.0, 2.0}};
  std::vector<Complex> probe_mfc;
  for (Complex z : probe_z) probe_mfc.push_back(solve_mfc(z, opts.solver));

  const auto trials = parallel_map<TrialDefects>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const LaplacianSample h = sample_laplacian_type(spec, derive_seed(opts.seed, t));
        EigenOptions eo;
        eo.vectors = opts.entrywise;
        const Spectrum s = eigendecompose(h.h, eo);
        TrialDefects out;
        out.defect.resize(np);
        if (opts.entrywise) out.diagonal.resize(np);
        for (std::size_t p = 0; p < np; ++p) {
          const Complex z = pts[p].z;
          const Complex m_n = empirical_stieltjes(s.eigenvalues, z, n);
          out.defect[p] = std::abs(m_n - mfc[p]);
          if (opts.entrywise) {
            const Eigen::VectorXcd g = resolvent_diagonal(s, z);
            double worst = 0.0;
            for (Eigen::Index i = 0; i < g.size(); ++i) {
              worst = std::max(worst, std::abs(g(i) - 1.0 / (h.h(i, i) - z - mfc[p])));
            }
            out.diagonal[p] = worst;
          }
        }
        if (opts.entrywise) {
          for (std::size_t q = 0; q < probe_z.size(); ++q) {
            Eigen::VectorXcd inv(s.size());
            for (Eigen::Index a = 0; a < s.size(); ++a) {
              inv(a) = 1.0 / (s.eigenvalues(a) - probe_z[q]);
            }
            const double scale = xi * control_psi(probe_z[q], n, spec.q);
            for (int row : probe_rows) {
              const Eigen::VectorXcd weighted =
                  s.eigenvectors.row(row).transpose().cast<Complex>().cwiseProduct(inv);
              const Eigen::VectorXcd g_row = s.eigenvectors.cast<Complex>() * weighted;
              for (Eigen::Index j = 0; j < g_row.size(); ++j) {
                if (j != row) out.offdiagonal = std::max(out.offdiagonal, std::abs(g_row(j)) / scale);
              }
            }
          }
        }
        return out;
      });

  LocalLawResult res;
  res.points.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    auto& row = res.points[p];
    row.point = pts[p];
    row.m_fc = mfc[p];
    row.xi_psi = xi_psi[p];
    double sum = 0.0;
    for (const auto& tr : trials) {
      sum += tr.defect[p];
      row.max_defect = std::max(row.max_defect, tr.defect[p]);
      if (opts.entrywise) row.max_diagonal_defect = std::max(row.max_diagonal_defect, tr.diagonal[p]);
    }
    row.mean_defect = sum / opts.trials;
  }

  VerificationReport& rep = res.report;
  rep.name = "locallaw";
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.stats["n"] = n;
  rep.stats["q"] = spec.q;
  rep.stats["xi"] = xi;
  rep.stats["points"] = np;

  for (Region region : {Region::kD0, Region::kD1, Region::kD2}) {
    std::vector<double> normalized, diag_normalized;
    std::vector<double> per_c(kConstantSweep.size(), 0.0);
    std::size_t count = 0;
    for (const auto& tr : trials) {
      for (std::size_t p = 0; p < np; ++p) {
        if (pts[p].region != region) continue;
        ++count;
        const double r = tr.defect[p] / xi_psi[p];
        normalized.push_back(r);
        if (opts.entrywise) diag_normalized.push_back(tr.diagonal[p] / xi_psi[p]);
        for (std::size_t c = 0; c < kConstantSweep.size(); ++c) {
          if (r <= kConstantSweep[c]) per_c[c] += 1.0;
        }
      }
    }
    Json j;
    j["points_per_trial"] = count / static_cast<std::size_t>(opts.trials);
    if (count > 0) {
      j["defect_over_xi_psi"] = summarize(normalized);
      Json fractions = Json::object();
      for (std::size_t c = 0; c < kConstantSweep.size(); ++c) {
        fractions["C=" + std::to_string(static_cast<int>(kConstantSweep[c]))] = per_c[c] / count;
      }
      j["fraction_within_C_xi_psi"] = fractions;
      j["smallest_C_all_points"] = constant_or_null(smallest_passing_constant(max_of(normalized)));
      if (opts.entrywise) {
        j["diagonal_defect_over_xi_psi"] = summarize(diag_normalized);
        j["smallest_C_diagonal"] =
            constant_or_null(smallest_passing_constant(max_of(diag_normalized)));
      }
    }
    rep.stats[region_name(region)] = j;
  }

  double eta2_max = 0.0;
  for (const auto& tr : trials) {
    double sup = 0.0;
    std::size_t inside = 0, total = 0;
    for (std::size_t p = 0; p < np; ++p) {
      if (pts[p].z.imag() == 2.0) eta2_max = std::max(eta2_max, tr.defect[p]);
      if (pts[p].region != Region::kD1) continue;
      sup = std::max(sup, tr.defect[p]);
      ++total;
      if (tr.defect[p] <= opts.constant * xi_psi[p]) ++inside;
    }
    res.sup_defect.push_back(sup);
    res.d1_fraction.push_back(total ? static_cast<double>(inside) / total : 1.0);
    res.max_offdiagonal.push_back(tr.offdiagonal);
  }
  rep.stats["sup_defect_d1"] = summarize(res.sup_defect);
  rep.stats["d1_fraction_per_trial"] = res.d1_fraction;
  rep.stats["max_defect_eta_2"] = eta2_max;
  if (opts.entrywise) rep.stats["offdiagonal_over_xi_psi"] = summarize(res.max_offdiagonal);
  rep.check_ge("d1_fraction_within_" + std::to_string(static_cast<int>(opts.constant)) +
                   "_xi_psi_min_trial",
               min_of(res.d1_fraction), opts.required_fraction);
  return res;
}

VerificationReport locallaw_report(const EnsembleSpec& spec, const SpectralDomain& domain,
                                   int trials, std::uint64_t seed) {
  LocalLawOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  return run_locallaw(spec, domain, opts).report;
}

std::pair<int, int> bulk_range(int n, double kappa) {
  if (!(kappa > 0.0 && kappa < 0.5)) throw InvalidArgument("kappa must lie in (0, 1/2)");
  const int lo = std::max(1, static_cast<int>(std::ceil(kappa * n - 1e-9)));
  const int hi = std::min(n, static_cast<int>(std::floor((1.0 - kappa) * n + 1e-9)));
  if (lo > hi || kappa * n < 1.0) throw InvalidArgument("bulk window is empty (need kappa N >= 1)");
  return {lo, hi};
}

namespace {

void finish_bulk(BulkResult& res, const BulkOptions& opts, const char* stat) {
  VerificationReport& rep = res.report;
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.stats["kappa"] = opts.kappa;
  rep.stats["degenerate"] = res.degenerate;
  if (res.degenerate) {
    rep.stats["note"] = "complete-graph sample has an atomic spectrum; not scored";
    return;
  }
  rep.stats[stat] = summarize(res.per_trial);
  rep.stats["per_trial"] = res.per_trial;
  rep.stats["smallest_C"] = constant_or_null(smallest_passing_constant(max_of(res.per_trial)));
  rep.check_le(std::string("max_") + stat, max_of(res.per_trial), opts.bound);
}

}  // namespace

BulkResult run_rigidity(const EnsembleSpec& spec, const BulkOptions& opts) {
  spec.validate();
  BulkResult res;
  res.report.name = "rigidity";
  res.degenerate = spec.degenerate();
  res.report.stats["n"] = spec.n;
  res.report.stats["q"] = spec.q;
  if (res.degenerate) {
    finish_bulk(res, opts, "normalized_deviation");
    return res;
  }
  const auto [lo, hi] = bulk_range(spec.n, opts.kappa);
  const ClassicalLocations gamma = classical_locations(spec.n);
  const ProjectionBasis basis = projection_basis(spec.n);
  const double scale = spec.xi() * spec.xi() / spec.q;
  res.per_trial = parallel_map<double>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const LaplacianSample h = sample_laplacian_type(spec, derive_seed(opts.seed, t));
        const Vector lambda = nontrivial_eigenvalues(h.h, basis);
        double worst = 0.0;
        for (int i = lo; i <= hi; ++i) {
          worst = std::max(worst, std::abs(lambda(i - 1) - gamma.gamma[i - 1]));
        }
        return worst / scale;
      });
  finish_bulk(res, opts, "normalized_deviation");
  return res;
}

VerificationReport rigidity_report(const EnsembleSpec& spec, double kappa, int trials,
                                   std::uint64_t seed) {
  BulkOptions opts;
  opts.kappa = kappa;
  opts.trials = trials;
  opts.seed = seed;
  return run_rigidity(spec, opts).report;
}

double delocalization_statistic(const Matrix& vectors, int n, double xi, double kappa) {
  const auto [lo, hi] = bulk_range(static_cast<int>(vectors.cols()), kappa);
  double worst = 0.0;
  for (int i = lo; i <= hi; ++i) {
    worst = std::max(worst, vectors.col(i - 1).cwiseAbs().maxCoeff());
  }
  return n * worst * worst / (xi * xi * xi);
}

BulkResult run_delocalization(const EnsembleSpec& spec, const BulkOptions& opts) {
  spec.validate();
  BulkResult res;
  res.report.name = "deloc";
  res.degenerate = spec.degenerate();
  res.report.stats["n"] = spec.n;
  res.report.stats["q"] = spec.q;
  if (res.degenerate) {
    finish_bulk(res, opts, "normalized_sup_norm");
    return res;
  }
  bulk_range(spec.n, opts.kappa);
  const double xi = spec.xi();
  res.per_trial = parallel_map<double>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const LaplacianSample h = sample_laplacian_type(spec, derive_seed(opts.seed, t));
        const Spectrum s = nontrivial_spectrum(h);
        return delocalization_statistic(s.eigenvectors, spec.n, xi, opts.kappa);
      });
  finish_bulk(res, opts, "normalized_sup_norm");
  return res;
}

BulkResult run_goe_delocalization(int n, double nu, const BulkOptions& opts) {
  BulkResult res;
  res.report.name = "deloc_goe";
  const double xi = std::pow(static_cast<double>(n), nu);
  res.per_trial = parallel_map<double>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const Matrix a = sample_goe(n, derive_seed(opts.seed, t));
        const SymmetricEigen eig = symmetric_eigen(a, true);
        return delocalization_statistic(eig.vectors, n, xi, opts.kappa);
      });
  finish_bulk(res, opts, "normalized_sup_norm");
  return res;
}

VerificationReport delocalization_report(const EnsembleSpec& spec, double kappa, int trials,
                                         std::uint64_t seed) {
  BulkOptions opts;
  opts.kappa = kappa;
  opts.trials = trials;
  opts.seed = seed;
  return run_delocalization(spec, opts).report;
}

double concentration_statistic(const Matrix& h, Complex z, Complex m_fc) {
  Complex s = 0.0;
  for (Eigen::Index k = 0; k < h.rows(); ++k) s += 1.0 / (h(k, k) - z - m_fc);
  return std::abs(s / static_cast<double>(h.rows()) - m_fc);
}

ConcentrationResult run_concentration(const EnsembleSpec& spec, Complex z,
                                      const TrialOptions& opts, double bound) {
  spec.validate();
  const Complex m = solve_mfc(z);
  ConcentrationResult res;
  res.scale = spec.xi() / spec.q;
  res.deviations = parallel_map<double>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const Vector d = structural_diagonal(spec, derive_seed(opts.seed, t));
        return concentration_statistic(Matrix(d.asDiagonal()), z, m);
      });
  std::vector<double> normalized;
  for (double x : res.deviations) normalized.push_back(x / res.scale);
  VerificationReport& rep = res.report;
  rep.name = "concentration";
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.stats["n"] = spec.n;
  rep.stats["q"] = spec.q;
  rep.stats["z"] = {z.real(), z.imag()};
  rep.stats["xi_over_q"] = res.scale;
  rep.stats["normalized_deviation"] = summarize(normalized);
  rep.check_le("max_normalized_deviation", max_of(normalized), bound);
  return res;
}

VerificationReport concentration_check(const EnsembleSpec& spec, Complex z, int trials,
                                       std::uint64_t seed) {
  TrialOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  return run_concentration(spec, z, opts).report;
}

GraphSumResult run_graph_sums(const EnsembleSpec& spec, const GraphSumOptions& opts) {
  spec.validate();
  GraphSumResult res;
  res.c_star = opts.c_star > 0.0 ? opts.c_star : operational_c_star(5.0, spec.n, spec.nu);
  const double xi_bound = 2.0 / res.c_star;
  const Complex z(opts.energy, opts.eta);
  const int size = spec.n + 1;

  struct SampleOutcome {
    bool on_xi = false;
    double worst_ratio = 0.0;
    double max_entry = 0.0;
    int violations = 0;
    int singleton_mismatch = 0;
  };
  const auto outcomes = parallel_map<SampleOutcome>(
      static_cast<std::size_t>(opts.trials), opts.threads, [&](std::size_t t) {
        const std::uint64_t s = derive_seed(opts.seed, t);
        const LaplacianSample h = sample_laplacian_type(spec, s);
        CounterStream pick(s, StreamTag::kMisc, 0);
        const int k = std::min(size - 1, static_cast<int>(pick.uniform() * size));
        const CMatrix gt = resolvent(vertex_deleted_laplacian(h.h, k), z).g;
        SampleOutcome out;
        out.max_entry = gt.cwiseAbs().maxCoeff();
        out.on_xi = out.max_entry <= xi_bound;
        if (!out.on_xi) return out;
        for (int gi = 0; gi < opts.graphs; ++gi) {
          const ColoredGraph g = random_connected_graph(opts.seed, static_cast<std::uint64_t>(gi),
                                                        opts.max_black, opts.max_edges, size, k);
          const double v = graph_sum_value(g, gt, k);
          const double bound = graph_sum_bound(g, spec.n, opts.eta, res.c_star);
          out.worst_ratio = std::max(out.worst_ratio, v / bound);
          if (v > bound) ++out.violations;
          const double vq = graph_sum_value(quotient_graph(g, singleton_partition(g.black_count)), gt, k);
          if (vq != v) ++out.singleton_mismatch;
        }
        return out;
      });

  int violations = 0, mismatches = 0;
  for (const auto& o : outcomes) {
    (o.on_xi ? res.samples_on_xi : res.samples_off_xi) += 1;
    res.worst_ratio = std::max(res.worst_ratio, o.worst_ratio);
    res.max_resolvent_entry = std::max(res.max_resolvent_entry, o.max_entry);
    violations += o.violations;
    mismatches += o.singleton_mismatch;
  }
  VerificationReport& rep = res.report;
  rep.name = "graphsum";
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.stats["n"] = spec.n;
  rep.stats["eta"] = opts.eta;
  rep.stats["c_star"] = res.c_star;
  rep.stats["C"] = std::max(2.0 / res.c_star, 1.0);
  rep.stats["graphs"] = opts.graphs;
  rep.stats["samples_on_xi"] = res.samples_on_xi;
  rep.stats["samples_off_xi"] = res.samples_off_xi;
  rep.stats["xi_exclusion_rate"] =
      static_cast<double>(res.samples_off_xi) / std::max(opts.trials, 1);
  rep.stats["max_resolvent_entry"] = res.max_resolvent_entry;
  rep.stats["worst_value_over_bound"] = res.worst_ratio;
  rep.check("bound_holds", violations == 0, res.worst_ratio, 1.0);
  rep.check("singleton_quotient_exact", mismatches == 0, mismatches, 0.0);
  rep.check_ge("samples_on_xi", res.samples_on_xi, 1.0);
  return res;
}

}  // namespace laprmt
