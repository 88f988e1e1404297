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

#include "laprmt/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "laprmt/eigensolver.hpp"
#include "laprmt/error.hpp"

namespace laprmt {
namespace {

constexpr int kTerms = 40;

struct WeidemanTable {
  double l = 0.0;
  std::array<double, kTerms> a{};  // a[k] multiplies Z^k

  WeidemanTable() {
    const int m = 2 * kTerms;
    l = std::sqrt(kTerms / std::numbers::sqrt2);
    // f_k = exp(-t^2)(L^2 + t^2), t = L tan(k pi / 2M), even in k; the
    // coefficients are its cosine transform.
    std::array<double, 2 * kTerms> f{};
    for (int k = 0; k < m; ++k) {
      const double t = l * std::tan(k * std::numbers::pi / (2.0 * m));
      f[k] = std::exp(-t * t) * (l * l + t * t);
    }
    for (int n = 1; n <= kTerms; ++n) {
      double s = f[0];
      for (int k = 1; k < m; ++k) {
        s += 2.0 * f[k] * std::cos(std::numbers::pi * k * n / m);
      }
      a[n - 1] = s / (2.0 * m);
    }
  }
};

const WeidemanTable& table() {
  static const WeidemanTable t;
  return t;
}

Complex faddeeva_upper(Complex z) {
  const auto& t = table();
  const Complex i(0.0, 1.0);
  const Complex denom = t.l - i * z;
  const Complex zz = (t.l + i * z) / denom;
  Complex p = t.a[kTerms - 1];
  for (int k = kTerms - 2; k >= 0; --k) p = p * zz + t.a[k];
  return 2.0 * p / (denom * denom) + 1.0 / (std::sqrt(std::numbers::pi) * denom);
}

}  // namespace

Complex faddeeva(Complex z) {
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

Complex gaussian_stieltjes(Complex w) {
  if (w.imag() < 0.0) return std::conj(gaussian_stieltjes(std::conj(w)));
  const Complex i(0.0, 1.0);
  return i * std::sqrt(std::numbers::pi / 2.0) * faddeeva(w / std::numbers::sqrt2);
}

Complex gaussian_stieltjes_derivative(Complex w) {
  return -1.0 - w * gaussian_stieltjes(w);
}

GaussHermiteRule gauss_hermite(int order) {
  if (order < 1) throw InvalidArgument("Gauss-Hermite order must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub = Eigen::VectorXd::Zero(order);
  for (int k = 0; k + 1 < order; ++k) sub(k) = std::sqrt((k + 1) / 2.0);
  // Only the first eigenvector component is needed for the weights.
  Eigen::MatrixXd first = Eigen::MatrixXd::Zero(1, order);
  first(0, 0) = 1.0;
  tridiagonal_ql(diag, sub, &first, 200);
  std::vector<int> idx(order);
  for (int k = 0; k < order; ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return diag(a) < diag(b); });
  GaussHermiteRule rule;
  for (int k : idx) {
    rule.nodes.push_back(diag(k));
    rule.weights.push_back(std::sqrt(std::numbers::pi) * first(0, k) * first(0, k));
  }
  return rule;
}

Complex gaussian_stieltjes_quadrature(Complex w, const GaussHermiteRule& rule) {
  // x = sqrt(2) s maps phi(x)dx to exp(-s^2) ds / sqrt(pi).
  Complex s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    s += rule.weights[k] / (std::numbers::sqrt2 * rule.nodes[k] - w);
  }
  return s / std::sqrt(std::numbers::pi);
}

double semicircle_density(double e) {
  if (std::abs(e) >= 2.0) return 0.0;
  return std::sqrt(4.0 - e * e) / (2.0 * std::numbers::pi);
}

double semicircle_cdf(double e) {
  if (e <= -2.0) return 0.0;
  if (e >= 2.0) return 1.0;
  return (e * std::sqrt(4.0 - e * e) + 4.0 * std::asin(e / 2.0)) /
             (4.0 * std::numbers::pi) +
         0.5;
}

double semicircle_quantile(double level) {
  if (level <= 0.0) return -2.0;
  if (level >= 1.0) return 2.0;
  double lo = -2.0, hi = 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (semicircle_cdf(mid) < level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Complex semicircle_stieltjes(Complex z) {
  // Root of m^2 + z m + 1 = 0 in the upper half-plane.
  const Complex root = std::sqrt(z * z - 4.0);
  Complex m = 0.5 * (-z + root);
  if (m.imag() < 0.0 || (m.imag() == 0.0 && std::abs(m) > 1.0)) m = 0.5 * (-z - root);
  return m;
}

double standard_normal_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace laprmt
