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

#ifndef LAPRMT_SPECIAL_HPP_
#define LAPRMT_SPECIAL_HPP_

#include <complex>
#include <vector>

namespace laprmt {

using Complex = std::complex<double>;

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), rational approximation of
// Weideman (SIAM J. Numer. Anal. 31, 1994) with 40 terms, relative accuracy
// ~1e-14 in the closed upper half-plane; the lower half uses reflection.
Complex faddeeva(Complex z);

// Stieltjes transform of the standard normal density,
// m_G(w) = \int phi(x) / (x - w) dx, and its derivative -1 - w m_G(w).
Complex gaussian_stieltjes(Complex w);
Complex gaussian_stieltjes_derivative(Complex w);

// Gauss–Hermite rule for the weight exp(-x^2), via Golub–Welsch.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int order);
// m_G(w) by quadrature; only accurate when w is well off the real axis.
Complex gaussian_stieltjes_quadrature(Complex w, const GaussHermiteRule& rule);

// Semicircle law of variance 1 on [-2, 2].
double semicircle_density(double e);
double semicircle_cdf(double e);
double semicircle_quantile(double level);
Complex semicircle_stieltjes(Complex z);

double standard_normal_density(double x);

}  // namespace laprmt

#endif  // LAPRMT_SPECIAL_HPP_
