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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "laprmt/laprmt.hpp"

namespace laprmt {
namespace {

// Monte Carlo instantiations of module-level statements at desk scale.
// Seeds are fixed; each test documents the sample size it relies on.

TEST(MonteCarlo, EmpiricalStieltjesNearFreeConvolution) {
  const auto spec = EnsembleSpec::from_exponent(1000, 0.5, EntryLaw::kGaussian);
  const Complex z(0.0, 2.0);
  const Complex m = solve_mfc(z);
  EigenOptions o;
  o.vectors = false;
  std::vector<double> d;
  for (int t = 0; t < 20; ++t) {
    const auto s = eigendecompose(sample_laplacian_type(spec, derive_seed(101, t)).h, o);
    d.push_back(std::abs(empirical_stieltjes(s.eigenvalues, z, 1000.0) - m));
    EXPECT_LT(d.back(), 0.05);
  }
  EXPECT_LT(median(d), 0.02);
}

TEST(MonteCarlo, ErrorTermBoundAtDenseScale) {
  const int n = 1000;
  const auto spec = EnsembleSpec::from_exponent(n, 0.5, EntryLaw::kGaussian);
  const double xi = spec.xi();
  int within = 0, total = 0;
  for (int t = 0; t < 4; ++t) {
    const auto h = sample_laplacian_type(spec, derive_seed(102, t));
    for (double eta : {0.05, 0.5}) {
      const Complex z(0.3 * t - 0.5, eta);
      const auto g = resolvent(h.h, z);
      const Complex m_n = g.g.trace() / double(n);
      for (int k = 0; k < 25; ++k) {
        const int idx = 40 * k + t;
        const Complex e_k = error_term_schur(h.h, idx, z, g.g(idx, idx), m_n);
        within += std::abs(e_k) <= 5.0 * xi * control_psi(z, n, spec.q);
        ++total;
      }
    }
  }
  EXPECT_GE(within, 0.95 * total);
}

TEST(MonteCarlo, LocalLawAtLargeEta) {
  const auto spec = EnsembleSpec::from_exponent(1000, 0.5, EntryLaw::kGaussian);
  const Complex z(0.0, 2.0);
  const Complex m = solve_mfc(z);
  EigenOptions o;
  o.vectors = false;
  for (int t = 0; t < 3; ++t) {
    const auto s = eigendecompose(sample_laplacian_type(spec, derive_seed(103, t)).h, o);
    EXPECT_LT(std::abs(empirical_stieltjes(s.eigenvalues, z, 1000.0) - m), 0.05);
  }
}

TEST(MonteCarlo, RigidityImprovesWithDensity) {
  BulkOptions o;
  o.trials = 6;
  o.seed = 104;
  const auto ds = EnsembleSpec::from_exponent(1000, 0.5, EntryLaw::kGaussian);
  const auto ss = EnsembleSpec::from_exponent(1000, 0.3);
  const auto dense = run_rigidity(ds, o);
  const auto sparse = run_rigidity(ss, o);
  // per_trial is scaled by xi^2/q; compare raw deviations
  const double raw_dense = median(dense.per_trial) * ds.xi() * ds.xi() / ds.q;
  const double raw_sparse = median(sparse.per_trial) * ss.xi() * ss.xi() / ss.q;
  EXPECT_LE(raw_dense, raw_sparse);
  EXPECT_LT(median(dense.per_trial), 1.0);
  EXPECT_LT(median(sparse.per_trial), 1.0);
}

TEST(MonteCarlo, GoeControlIsMoreDelocalized) {
  BulkOptions o;
  o.trials = 4;
  o.seed = 105;
  const auto lap = run_delocalization(EnsembleSpec::from_exponent(1000, 0.35), o);
  const auto goe = run_goe_delocalization(1000, 0.1, o);
  EXPECT_LT(max_of(goe.per_trial), median(lap.per_trial));
}

TEST(MonteCarlo, ConcentrationAtSparseScale) {
  TrialOptions o;
  o.trials = 100;
  o.seed = 106;
  const auto r = run_concentration(EnsembleSpec::from_exponent(1000, 0.4), Complex(0.5, 0.1), o);
  EXPECT_TRUE(r.report.passed());
}

TEST(MonteCarlo, ConcentrationShrinksWithN) {
  TrialOptions o;
  o.trials = 20;
  o.seed = 107;
  const Complex z(0.5, 0.1);
  const auto small = run_concentration(EnsembleSpec::from_exponent(500, 0.5, EntryLaw::kGaussian), z, o);
  const auto large = run_concentration(EnsembleSpec::from_exponent(5000, 0.5, EntryLaw::kGaussian), z, o);
  EXPECT_LT(median(large.deviations), median(small.deviations));
}

TEST(MonteCarlo, FlowPathMatchesEvolveMarginal) {
  const int n = 100;
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(n, 0.35), 108);
  const double t = 0.5;
  std::vector<double> path, direct;
  // Pooled over 100 paths of 5050 entries each.
  for (int s = 0; s < 100; ++s) {
    const auto a = evolve_path(h, t, 256, derive_seed(108, s, 1));
    const auto b = evolve(h, t, derive_seed(108, s, 2));
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i < j; ++i) {
        path.push_back(a.h(i, j) - std::exp(-t / 2) * h.h(i, j));
        direct.push_back(b.h(i, j) - std::exp(-t / 2) * h.h(i, j));
      }
    }
  }
  EXPECT_LT(ks_statistic(path, direct), 0.02);
}

TEST(MonteCarlo, HatResolventNearFreeConvolution) {
  const int n = 1000;
  const auto spec = EnsembleSpec::from_exponent(n, 0.35);
  const double t = spec.xi() / spec.q;
  const auto h = sample_laplacian_type(spec, 109);
  const auto hat = hat_decomposition(h, t, 110);
  const Vector ev = symmetric_eigenvalues(hat.a_hat);
  const auto domain = build_domain(5.0, n, 0.1, GridDensity{4, 0.5});
  int within = 0, total = 0;
  for (const auto& p : domain.region(Region::kD1)) {
    const Complex m = empirical_stieltjes(ev, p.z, double(n));
    within += std::abs(m - solve_mfc(p.z)) <= 5.0 * spec.xi() * control_psi(p.z, n, spec.q);
    ++total;
  }
  EXPECT_GE(within, 0.95 * total);
}

TEST(MonteCarlo, NormalizedGapMeans) {
  TrialOptions o;
  o.trials = 100;
  o.seed = 111;
  const auto lap = gap_samples(EnsembleSpec::from_exponent(1000, 0.35), 0.1, o);
  const auto goe = goe_reference(1000, 0.1, o);
  EXPECT_NEAR(mean(lap.values), 1.0, 0.02);
  EXPECT_NEAR(mean(goe.values), 1.0, 0.02);
}

TEST(MonteCarlo, GoeGapShapeAndHomogeneity) {
  TrialOptions o;
  o.trials = 200;
  o.seed = 112;
  const auto center = goe_reference(1000, 0.49, o);
  const auto wide = goe_reference(1000, 0.25, o);
  int small = 0;
  for (double g : wide.values) small += g < 0.05;
  EXPECT_LT(double(small) / wide.values.size(), 0.01);
  EXPECT_LT(ks_distance(center, wide), 0.03);
}

TEST(MonteCarlo, OneSiteCorrelationNormalization) {
  TrialOptions o;
  o.trials = 100;
  o.seed = 113;
  CorrelationOptions c;
  c.order = 1;
  const auto lap = correlation_estimate(EnsembleSpec::from_exponent(1000, 0.35), c, o);
  const auto goe = goe_correlation_estimate(1000, c, o);
  const double extent = 2.0 * c.range;
  EXPECT_NEAR(lap.mass() / extent, 1.0, 0.05);
  EXPECT_NEAR(goe.mass() / extent, 1.0, 0.05);
}

}  // namespace
}  // namespace laprmt
