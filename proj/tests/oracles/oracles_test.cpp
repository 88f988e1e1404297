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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <vector>

#include "laprmt/laprmt.hpp"
#include "support.hpp"

namespace laprmt {
namespace {

// Imaginary part of the kernel integral at z = i eta, m = i y, by a long
// double trapezoid rule with compensated summation.
long double kernel_imag(long double eta, long double y) {
  const long double a = eta + y;
  const long double lo = -12.0L, hi = 12.0L;
  const int nodes = 1000000;
  const long double h = (hi - lo) / nodes;
  const long double c = 1.0L / std::sqrt(2.0L * std::numbers::pi_v<long double>);
  long double sum = 0.0L, comp = 0.0L;
  for (int k = 0; k <= nodes; ++k) {
    const long double x = lo + k * h;
    long double f = c * std::exp(-x * x / 2.0L) * a / (x * x + a * a);
    if (k == 0 || k == nodes) f /= 2.0L;
    const long double yk = f - comp;
    const long double t = sum + yk;
    comp = (t - sum) - yk;
    sum = t;
  }
  return sum * h;
}

TEST(FreeConvolutionOracle, FixtureOnImaginaryAxis) {
  const long double eta = 0.01L;
  long double lo = 1e-3L, hi = 1.0L;
  for (int it = 0; it < 45; ++it) {
    const long double mid = 0.5L * (lo + hi);
    (mid - kernel_imag(eta, mid) < 0.0L ? lo : hi) = mid;
  }
  const double oracle = static_cast<double>(0.5L * (lo + hi));
  const double frozen = 0.748768276709707;
  EXPECT_NEAR(oracle, frozen, 1e-10);
  const Complex m = solve_mfc(Complex(0.0, 0.01));
  EXPECT_NEAR(m.imag(), frozen, 1e-10);
  EXPECT_NEAR(m.real(), 0.0, 1e-12);
}

TEST(FreeConvolutionOracle, SecondMomentFromToyModel) {
  // (1/N) Tr A^2 for A = GOE + R*DR + gI concentrates at the variance 2.
  const int n = 2000;
  const auto basis = projection_basis(n);
  std::vector<double> v;
  for (int s = 0; s < 4; ++s) {
    const Matrix a = decompose_gaussian(n, 100 + s, basis);
    v.push_back(a.squaredNorm() / n);
  }
  EXPECT_NEAR(mean(v), 2.0, 0.02);
  EXPECT_NEAR(tabulate_density().second_moment, 2.0, 1e-4);
}

TEST(EigensolverOracle, AgreesWithEigen) {
  for (int n : {1, 2, 7, 64, 300}) {
    const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(n, 0.35), n);
    Eigen::SelfAdjointEigenSolver<Matrix> ref(h.h);
    const auto ours = symmetric_eigen(h.h);
    const double scale = std::max(1.0, h.h.cwiseAbs().maxCoeff());
    EXPECT_LT((ours.values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12 * scale * (n + 1)) << n;
    const Matrix residual = h.h * ours.vectors - ours.vectors * ours.values.asDiagonal();
    EXPECT_LT(residual.cwiseAbs().maxCoeff(), 1e-12 * scale * (n + 1)) << n;
  }
}

TEST(EigensolverOracle, AgreesWithEigenOnClusteredSpectrum) {
  EnsembleSpec s;
  s.n = 30;
  s.q = std::sqrt(30.0);
  Matrix m = sample_laplacian_type(s, 0).h;  // complete graph, 30-fold eigenvalue
  m(0, 1) += 1e-9;
  m(1, 0) += 1e-9;
  Eigen::SelfAdjointEigenSolver<Matrix> ref(m);
  const auto ours = symmetric_eigen(m);
  EXPECT_LT((ours.values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((ours.vectors.transpose() * ours.vectors - Matrix::Identity(31, 31)).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(SemicircleOracle, CdfByQuadrature) {
  // Simpson on the density.
  for (double e : {-1.9, -0.7, 0.0, 0.4, 1.5}) {
    const int nodes = 20000;
    const double h = (e + 2.0) / nodes;
    double s = 0.0;
    for (int k = 0; k <= nodes; ++k) {
      const double w = (k == 0 || k == nodes) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      s += w * semicircle_density(-2.0 + k * h);
    }
    EXPECT_NEAR(semicircle_cdf(e), s * h / 3.0, 1e-7) << e;
  }
}

TEST(GraphSumOracle, FigureOneQuintupleSum) {
  const int n = 40;
  const int k = 11;
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(n, 0.35), 3);
  const CMatrix gt = resolvent(vertex_deleted_laplacian(h.h, k), Complex(0.1, 0.5)).g;
  const Matrix a = gt.cwiseAbs();
  // Path 1-2-3, edges 4-5 and 5-2.
  ColoredGraph g;
  g.black_count = 5;
  g.edges = {{0, 1}, {1, 2}, {3, 4}, {4, 1}};
  long double total = 0.0L;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3)
        for (int i4 = 0; i4 < n; ++i4)
          for (int i5 = 0; i5 < n; ++i5)
            total += static_cast<long double>(a(i1, i2)) * a(i2, i3) * a(i2, i5) * a(i4, i5);
  const double naive = static_cast<double>(total / std::pow(static_cast<long double>(n), 5));
  EXPECT_NEAR(graph_sum_value(g, gt, k), naive, 1e-12 * naive);
}

TEST(GraphSumOracle, WhiteVertexVariant) {
  const int n = 25;
  const int k = 4;
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(n, 0.35), 5);
  const CMatrix gt = resolvent(vertex_deleted_laplacian(h.h, k), Complex(-0.3, 0.5)).g;
  const Matrix a = gt.cwiseAbs();
  const int white = 17;            // full-matrix index
  const int j = white - 1;         // its position in the minor
  ColoredGraph g;
  g.black_count = 4;
  g.white_indices = {white};
  g.edges = {{0, 1}, {1, 2}, {3, 4}, {4, 1}};
  long double total = 0.0L;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3)
        for (int i4 = 0; i4 < n; ++i4)
          total += static_cast<long double>(a(i1, i2)) * a(i2, i3) * a(i2, j) * a(i4, j);
  const double naive = static_cast<double>(total / std::pow(static_cast<long double>(n), 4));
  EXPECT_NEAR(graph_sum_value(g, gt, k), naive, 1e-12 * naive);
}

// Coefficients of every W_ab in the independent edge variables x_e, e = (i<j),
// each with variance 1/N; W_ii = -sum_j W_ij.
std::vector<Matrix> edge_coefficients(int n) {
  const int size = n + 1;
  std::vector<Matrix> coef;
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      Matrix c = Matrix::Zero(size, size);
      c(i, j) = c(j, i) = 1.0;
      c(i, i) = c(j, j) = -1.0;
      coef.push_back(c);
    }
  }
  return coef;
}

TEST(CovarianceOracle, BruteForceEntryCovariance) {
  const int n = 4;
  const auto coef = edge_coefficients(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n; ++k)
        for (int l = 0; l <= n; ++l) {
          double cov = 0.0;
          for (const auto& c : coef) cov += c(i, j) * c(k, l) / n;
          EXPECT_NEAR(entry_covariance_oracle(i, j, k, l, n), cov, 1e-14)
              << i << j << k << l;
        }
}

TEST(CovarianceOracle, BruteForceProjectedCovariance) {
  const int n = 4;
  const auto basis = projection_basis(n);
  const auto coef = edge_coefficients(n);
  std::vector<Matrix> projected;
  for (const auto& c : coef) projected.push_back(basis.r.transpose() * c * basis.r);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double cov = 0.0;
          for (const auto& p : projected) cov += p(a, b) * p(c, d) / n;
          EXPECT_NEAR(projected_covariance_oracle(a, b, c, d, basis), cov, 1e-13)
              << a << b << c << d;
        }
}

TEST(ClassicalLocationOracle, BisectionOnIntegratedDensity) {
  // gamma_i from an independent CDF: Simpson on density_fc with bisection.
  const int n = 7;
  const auto c = classical_locations(n);
  auto cdf = [](double e) {
    const int nodes = 2000;
    const double lo = -12.0, h = (e - lo) / nodes;
    double s = 0.0;
    for (int k = 0; k <= nodes; ++k) {
      const double w = (k == 0 || k == nodes) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      s += w * density_fc(lo + k * h);
    }
    return s * h / 3.0;
  };
  for (int i : {1, 3}) {
    double lo = -6.0, hi = 6.0;
    const double level = (i - 0.5) / n;
    for (int it = 0; it < 32; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cdf(mid) < level ? lo : hi) = mid;
    }
    EXPECT_NEAR(c.gamma[i - 1], 0.5 * (lo + hi), 1e-6) << i;
  }
}

}  // namespace
}  // namespace laprmt
