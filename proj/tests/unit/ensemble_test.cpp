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
#include "support.hpp"

namespace laprmt {
namespace {

TEST(EnsembleSpec, ValidatesParameters) {
  EnsembleSpec s;
  s.n = 0;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.n = 100;
  s.q = 10.5;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.q = 10.0;
  EXPECT_NO_THROW(s.validate());
  s.nu = 0.0;
  EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(EnsembleSpec, FromExponent) {
  const auto s = EnsembleSpec::from_exponent(1000, 0.35);
  EXPECT_NEAR(s.q, std::pow(1000.0, 0.35), 1e-12);
  EXPECT_NEAR(s.p(), s.q * s.q / 1000.0, 1e-15);
  EXPECT_FALSE(s.degenerate());
  EXPECT_TRUE(EnsembleSpec::from_exponent(100, 0.5).degenerate());
}

TEST(RawLaplacian, FullProbabilityIsCompleteGraph) {
  EnsembleSpec s;
  s.n = 4;
  s.q = 2.0;
  const auto raw = sample_raw_laplacian(s, 17);
  ASSERT_EQ(raw.m.rows(), 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) EXPECT_EQ(raw.m(i, j), i == j ? -4.0 : 1.0);
  }
}

TEST(RawLaplacian, ZeroProbabilityIsZero) {
  EnsembleSpec s;
  s.n = 20;
  s.q = 0.0;
  EXPECT_EQ(sample_raw_laplacian(s, 3).m.cwiseAbs().maxCoeff(), 0.0);
}

TEST(RawLaplacian, MeanDegreeIsQSquared) {
  EnsembleSpec s;
  s.n = 1000;
  s.q = 10.0;
  const int trials = 100;
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto raw = sample_raw_laplacian(s, 1000 + t);
    total += -raw.m.diagonal().mean() * 1000.0 / 1001.0;
  }
  // Mean of 100 x 1001 degrees, each Binomial(1000, 0.1); rows share edges so
  // the spread is at most that of independent sums of edge counts.
  const double mean_degree = total / trials;
  const double sd = std::sqrt(1000 * 0.1 * 0.9 * 2.0 / (1001.0 * trials));
  EXPECT_NEAR(mean_degree, 100.0, 3.0 * sd + 1e-9);
}

TEST(CenterAndRescale, EntryFormula) {
  EnsembleSpec s;
  s.n = 1000;
  s.q = 10.0;
  RawLaplacian raw;
  raw.m = Matrix::Zero(1001, 1001);
  raw.m(0, 1) = raw.m(1, 0) = 1.0;
  raw.m(0, 0) = raw.m(1, 1) = -1.0;
  const auto h = center_and_rescale(raw, s);
  EXPECT_NEAR(h.h(0, 1), 0.09 / std::sqrt(0.9), 1e-12);
  EXPECT_NEAR(h.h(0, 1), 0.094868, 1e-6);
  EXPECT_NEAR(h.h(2, 3), (0.0 - 0.01) / std::sqrt(0.9), 1e-12);
  EXPECT_LT((h.h * constant_unit_vector(1001)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CenterAndRescale, RoundTripReconstructsRaw) {
  const auto s = EnsembleSpec::from_exponent(300, 0.35);
  const auto raw = sample_raw_laplacian(s, 8);
  const auto h = center_and_rescale(raw, s);
  EXPECT_LT((reconstruct_raw(h, s) - raw.m).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(CenterAndRescale, EntryVariance) {
  const auto s = EnsembleSpec::from_exponent(1000, 0.35);
  std::vector<double> all;
  for (int t = 0; t < 2; ++t) {
    const auto h = sample_laplacian_type(s, 50 + t);
    const auto e = laprmt::testing::upper_entries(h.h);
    all.insert(all.end(), e.begin(), e.end());
  }
  std::vector<double> sq(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) sq[i] = all[i] * all[i];
  EXPECT_NEAR(mean(sq), 1.0 / 1000.0, 5.0 * standard_error(sq));
  EXPECT_NEAR(mean(sq), bernoulli_entry_variance(s), 5.0 * standard_error(sq));
  EXPECT_NEAR(bernoulli_entry_variance(s), 1.0 / 1000.0, 1e-15);
  EXPECT_NEAR(bernoulli_entry_mean(s), 0.0, 1e-15);
}

TEST(LaplacianSample, GaussianSizeOne) {
  EnsembleSpec s;
  s.n = 1;
  s.q = 1.0;
  s.entry_law = EntryLaw::kGaussian;
  const auto h = sample_laplacian_type(s, 4);
  ASSERT_EQ(h.size(), 2);
  const double x = h.h(0, 1);
  EXPECT_NE(x, 0.0);
  EXPECT_DOUBLE_EQ(h.h(1, 0), x);
  EXPECT_DOUBLE_EQ(h.h(0, 0), -x);
  EXPECT_DOUBLE_EQ(h.h(1, 1), -x);
}

TEST(LaplacianSample, RowSumsVanish) {
  for (auto law : {EntryLaw::kBernoulliCentered, EntryLaw::kGaussian}) {
    const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(200, 0.35, law), 6);
    EXPECT_LT((h.h * Vector::Ones(h.size())).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((h.h - h.h.transpose()).cwiseAbs().maxCoeff(), 0.0 + 1e-300);
  }
}

TEST(LaplacianSample, DeterministicInSeed) {
  const auto s = EnsembleSpec::from_exponent(150, 0.35);
  EXPECT_EQ(sample_laplacian_type(s, 3).h, sample_laplacian_type(s, 3).h);
  EXPECT_NE(sample_laplacian_type(s, 3).h, sample_laplacian_type(s, 4).h);
}

TEST(LaplacianSample, ThirdAbsoluteMomentBound) {
  const auto s = EnsembleSpec::from_exponent(1000, 0.35);
  const double exact = bernoulli_entry_abs_moment(s, 3);
  const double p = s.p();
  const double a = (1.0 / s.q - s.q / s.n) / std::sqrt(1.0 - p);
  const double b = (s.q / s.n) / std::sqrt(1.0 - p);
  EXPECT_NEAR(exact, p * a * a * a + (1.0 - p) * b * b * b, 1e-15);
  EXPECT_LE(exact * s.n * s.q, 2.0);
  const auto h = sample_laplacian_type(s, 12);
  double m3 = 0.0;
  const auto e = laprmt::testing::upper_entries(h.h);
  for (double x : e) m3 += std::abs(x * x * x);
  EXPECT_LE(m3 / e.size() * s.n * s.q, 2.0);
}

TEST(LaplacianSample, CustomLawValidation) {
  auto law = std::make_shared<CustomLaw>();
  law->inverse_cdf = [](double u) { return (u < 0.5 ? -1.0 : 1.0) / 10.0; };
  law->variance = 0.01;
  EnsembleSpec s;
  s.n = 100;
  s.q = 5.0;
  s.entry_law = EntryLaw::kCustom;
  s.custom = law;
  EXPECT_NO_THROW(s.validate());
  const auto h = sample_laplacian_type(s, 1);
  EXPECT_NEAR(std::abs(h.h(0, 1)), 0.1, 1e-15);
  law->variance = 0.02;
  EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(Goe, SizeOneVariance) {
  std::vector<double> v;
  for (int s = 0; s < 20000; ++s) v.push_back(sample_goe(1, s)(0, 0));
  EXPECT_NEAR(sample_variance(v), 2.0, 5.0 * 2.0 * std::sqrt(2.0 / v.size()));
}

TEST(Goe, DiagonalToOffDiagonalVarianceRatio) {
  std::vector<double> diag, off;
  for (int s = 0; diag.size() < 100000; ++s) {
    const Matrix g = sample_goe(400, s);
    for (int i = 0; i < 400; ++i) diag.push_back(g(i, i));
    for (int i = 1; i < 400; ++i) off.push_back(g(i - 1, i));
  }
  EXPECT_NEAR(sample_variance(diag) / sample_variance(off), 2.0, 0.1);
}

TEST(Goe, SemicircleHistogram) {
  const Matrix g = sample_goe(1000, 77);
  const auto ev = laprmt::testing::sorted(symmetric_eigenvalues(g));
  double sup = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double c = semicircle_cdf(ev[i]);
    sup = std::max({sup, std::abs(c - double(i) / ev.size()),
                    std::abs(c - double(i + 1) / ev.size())});
  }
  EXPECT_LT(sup, 0.02);
}

TEST(ProjectionBasis, SizeOne) {
  const auto b = projection_basis(1);
  ASSERT_EQ(b.rows(), 2);
  ASSERT_EQ(b.cols(), 1);
  EXPECT_NEAR(b.r(0, 0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.r(1, 0), -1.0 / std::sqrt(2.0), 1e-15);
}

TEST(ProjectionBasis, OrthonormalAndOrthogonalToConstant) {
  const auto b = projection_basis(100);
  EXPECT_LT((b.r.transpose() * b.r - Matrix::Identity(100, 100)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((b.r.transpose() * Vector::Ones(101)).cwiseAbs().maxCoeff(), 1e-12);
  for (int c = 0; c < b.cols(); ++c) {
    int first = 0;
    while (std::abs(b.r(first, c)) < 1e-14) ++first;
    EXPECT_GT(b.r(first, c), 0.0);
  }
}

TEST(ProjectOutTrivial, CompleteGraphIsScalar) {
  EnsembleSpec s;
  s.n = 9;
  s.q = 3.0;
  const auto h = sample_laplacian_type(s, 0);
  EXPECT_TRUE(h.degenerate);
  const Matrix p = project_out_trivial(h.h, projection_basis(9));
  const Vector ev = symmetric_eigenvalues(p);
  EXPECT_LT(ev.maxCoeff() - ev.minCoeff(), 1e-12);
  EXPECT_NEAR(ev(0), -10.0 / 3.0, 1e-12);
}

TEST(ProjectOutTrivial, SpectrumUnionZero) {
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(120, 0.35), 5);
  const auto basis = projection_basis(120);
  auto inner = laprmt::testing::sorted(symmetric_eigenvalues(project_out_trivial(h.h, basis)));
  inner.push_back(0.0);
  std::sort(inner.begin(), inner.end());
  const auto full = laprmt::testing::sorted(symmetric_eigenvalues(h.h));
  EXPECT_LT(laprmt::testing::max_abs_diff(inner, full), 1e-9);
}

TEST(ProjectOutTrivial, TraceIdentity) {
  EnsembleSpec s = EnsembleSpec::from_exponent(80, 0.5, EntryLaw::kGaussian);
  const Matrix w = sample_laplacian_type(s, 2).h + sample_goe(81, 3);
  const auto basis = projection_basis(80);
  const Vector e = constant_unit_vector(81);
  const double lhs = project_out_trivial(w, basis).trace();
  EXPECT_NEAR(lhs, w.trace() - e.dot(w * e), 1e-10);
  EXPECT_THROW(project_out_trivial(Matrix::Zero(5, 5), basis), DimensionMismatch);
}

TEST(CovarianceOracle, Examples) {
  EXPECT_NEAR(entry_covariance_oracle(0, 1, 0, 1, 3), 1.0 / 3.0, 1e-15);
  for (int n : {2, 5, 40}) EXPECT_NEAR(entry_covariance_oracle(0, 0, 0, 0, n), 1.0, 1e-14);
  EXPECT_NEAR(entry_covariance_oracle(0, 0, 1, 1, 10), 0.1, 1e-15);
  EXPECT_NEAR(entry_covariance_oracle(0, 1, 2, 3, 10), 0.0, 1e-15);
  EXPECT_THROW(entry_covariance_oracle(0, 0, 0, 11, 10), InvalidArgument);
}

TEST(CovarianceOracle, ProjectedMatchesFormula) {
  const int n = 6;
  const auto b = projection_basis(n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      double s4 = 0.0;
      for (int i = 0; i <= n; ++i) s4 += b.r(i, a) * b.r(i, a) * b.r(i, c) * b.r(i, c);
      const double expect =
          (1.0 + (a == c ? 2.0 : 0.0)) / n + (n + 1.0) / n * s4;
      EXPECT_NEAR(projected_covariance_oracle(a, a, c, c, b), expect, 1e-13);
    }
  }
}

TEST(DecomposeGaussian, MeanIsZero) {
  const int n = 8;
  const auto basis = projection_basis(n);
  std::vector<std::vector<double>> entries(static_cast<std::size_t>(n * n));
  for (int s = 0; s < 20000; ++s) {
    const Matrix m = decompose_gaussian(n, s, basis);
    for (int k = 0; k < n * n; ++k) entries[k].push_back(m.data()[k]);
  }
  for (const auto& e : entries) EXPECT_LT(std::abs(mean(e)), 5.0 * standard_error(e));
}

TEST(DecomposeGaussian, PartsHaveStatedLaws) {
  const auto parts = sample_decomposition_parts(50, 4);
  EXPECT_EQ(parts.goe.rows(), 50);
  EXPECT_EQ(parts.d.size(), 51);
  EXPECT_TRUE(std::isfinite(parts.g));
}

}  // namespace
}  // namespace laprmt
