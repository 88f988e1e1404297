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

#ifndef LAPRMT_FREECONV_HPP_
#define LAPRMT_FREECONV_HPP_

#include <optional>
#include <vector>

#include "laprmt/domain.hpp"
#include "laprmt/report.hpp"

namespace laprmt {

enum class GaussianKernel {
  kFaddeeva,      // closed form through the Faddeeva function (default)
  kGaussHermite,  // quadrature; inaccurate close to the real axis
};

struct SolverOptions {
  double tol = 1e-12;
  int max_iterations = 10000;
  double eta_start = 2.0;
  double eta_factor = 0.7;
  double damping_floor = 1.0 / 64.0;
  GaussianKernel kernel = GaussianKernel::kFaddeeva;
  int hermite_order = 201;
};

struct SolveResult {
  Complex m;
  double residual = 0.0;
  int iterations = 0;
};

// m_fc(z): the solution in the upper half-plane of
// m = \int rho_G(x) / (x - z - m) dx.
Complex solve_mfc(Complex z, const SolverOptions& opts = {});
// With a warm start the continuation is skipped unless the direct solve fails.
SolveResult solve_mfc_detailed(Complex z, const SolverOptions& opts = {},
                               std::optional<Complex> guess = std::nullopt);
double mfc_residual(Complex z, Complex m);
// dm_fc/dz from implicit differentiation of the fixed point.
Complex mfc_derivative(Complex z, Complex m);

// Variant with Gaussian scale s = (1 + (1 - e^{-t})/N)^{1/2} in the kernel.
Complex solve_mfc_scaled(Complex z, double t, int n, const SolverOptions& opts = {});

// m_t(z) = (1/N) sum_i 1 / (lambda_i - z - vartheta^2 m_t(z)), N = lambda.size().
Complex solve_mt(Complex z, const std::vector<double>& lambda, double vartheta,
                 const SolverOptions& opts = {});
SolveResult solve_mt_detailed(Complex z, const std::vector<double>& lambda,
                              double vartheta, const SolverOptions& opts = {});
double vartheta_of_time(double t);

// rho_fc(E) = Im m_fc(E + i eta0) / pi, values below 1e-14 set to 0.
inline constexpr double kDensityEta = 1e-6;
double density_fc(double e, const SolverOptions& opts = {});

// rho_fc, its derivative and the normalized CDF on a symmetric grid.
struct DensityTable {
  double e_max = 12.0;
  double step = 1e-3;
  std::vector<double> e;
  std::vector<Complex> m;
  std::vector<double> residual;
  std::vector<double> rho;
  std::vector<double> drho;
  std::vector<double> cdf;  // normalized so cdf.back() == 1
  double total_mass = 0.0;  // before normalization
  double second_moment = 0.0;
};

DensityTable tabulate_density(double e_max = 12.0, double step = 1e-3,
                              const SolverOptions& opts = {});

// Normalization, second moment and solver residual of a density table.
VerificationReport density_check(const DensityTable& table, double mass_tol = 1e-6,
                                 double moment_tol = 1e-4, double residual_tol = 1e-12);

struct ClassicalLocations {
  int n = 0;
  std::vector<double> gamma;
  std::vector<double> gamma_sc;
};

// gamma_i with CDF(gamma_i) = (i - 1/2)/N, i = 1..N.
ClassicalLocations classical_locations(int n, const DensityTable& table);
ClassicalLocations classical_locations(int n);
// Inverse of the tabulated CDF at one level.
double cdf_inverse(const DensityTable& table, double level);

// 1 - (1/norm) sum_k 1/(w_k - z - m)^2; norm defaults to w.size().
Complex stability_factor(const std::vector<double>& w, Complex z, Complex m,
                         double norm = 0.0);
// epsilon(z) = (1/norm) sum_k 1/(w_k - z - m) - m.
Complex stability_epsilon(const std::vector<double>& w, Complex z, Complex m,
                          double norm = 0.0);

struct StabilityBounds {
  double c1 = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
// c1 = min(c*^3/16, c*/2), bounds c*^2/16 and 1 + 1/c*^2.
StabilityBounds stability_bounds(double c_star);

// Scans D1 on a grid: min Im m_fc (the operational c_*), max |m_fc|,
// max residual and the largest difference quotient between grid neighbours.
struct RegularityStats {
  double c_star = 0.0;
  double max_abs_m = 0.0;
  double max_residual = 0.0;
  double lipschitz = 0.0;
  std::size_t points = 0;
};
RegularityStats regularity_scan(const SpectralDomain& domain, Region region,
                                const SolverOptions& opts = {});
double operational_c_star(double l, int n, double nu, GridDensity density = {},
                          const SolverOptions& opts = {});
VerificationReport regularity_report(double l, int n, double nu,
                                     GridDensity density = {},
                                     const SolverOptions& opts = {});

}  // namespace laprmt

#endif  // LAPRMT_FREECONV_HPP_
