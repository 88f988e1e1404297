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

#ifndef LAPRMT_DOMAIN_HPP_
#define LAPRMT_DOMAIN_HPP_

#include <complex>
#include <vector>

namespace laprmt {

using Complex = std::complex<double>;

// D0: |E| <= 2 xi + L, 2 <= eta <= L.
// D1: |E| <= L, xi^3/N <= eta <= 2.
// D2: 2 xi <= |E| <= 2 xi + L, xi^3/N <= eta <= 2.
enum class Region { kD0 = 0, kD1 = 1, kD2 = 2 };

const char* region_name(Region r);

struct DomainPoint {
  Complex z;
  Region region;
};

struct GridDensity {
  int eta_per_decade = 8;
  double e_step = 0.25;
  GridDensity refined() const { return {2 * eta_per_decade, e_step / 2.0}; }
};

struct SpectralDomain {
  double l = 5.0;
  int n = 1;
  double nu = 0.1;
  double xi = 1.0;
  std::vector<DomainPoint> points;

  double eta_min() const;
  std::vector<DomainPoint> region(Region r) const;
  bool contains(const DomainPoint& p) const;
};

// Log-spaced eta (anchored at the lower end, upper end always included) and
// an E grid anchored at 0 (D2: at 2 xi). Refined grids are supersets.
SpectralDomain build_domain(double l, int n, double nu, GridDensity density = {});

// Psi(z) = 1/q + (N eta)^{-1/2}.
double control_psi(Complex z, int n, double q);

}  // namespace laprmt

#endif  // LAPRMT_DOMAIN_HPP_
