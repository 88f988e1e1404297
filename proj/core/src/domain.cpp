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

#include "laprmt/domain.hpp"

#include <cmath>

#include "laprmt/error.hpp"

namespace laprmt {
namespace {

constexpr double kSlack = 1e-12;

// lo * 10^(k/d) below hi, then hi itself.
std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> out;
  if (lo > hi * (1.0 + kSlack)) return out;
  for (int k = 0;; ++k) {
    const double v = lo * std::pow(10.0, static_cast<double>(k) / per_decade);
    if (v >= hi * (1.0 - kSlack)) break;
    out.push_back(v);
  }
  out.push_back(hi);
  return out;
}

// origin + j * step for j >= 0 while the offset stays within `span`.
std::vector<double> ray(double origin, double span, double step) {
  std::vector<double> out;
  for (int j = 0; j * step <= span * (1.0 + kSlack) + kSlack; ++j) {
    out.push_back(origin + j * step);
  }
  return out;
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::kD0: return "D0";
    case Region::kD1: return "D1";
    case Region::kD2: return "D2";
  }
  return "?";
}

double SpectralDomain::eta_min() const { return xi * xi * xi / n; }

std::vector<DomainPoint> SpectralDomain::region(Region r) const {
  std::vector<DomainPoint> out;
  for (const auto& p : points) {
    if (p.region == r) out.push_back(p);
  }
  return out;
}

bool SpectralDomain::contains(const DomainPoint& p) const {
  const double e = std::abs(p.z.real());
  const double eta = p.z.imag();
  const double lo = eta_min() * (1.0 - kSlack);
  const double tol = 1e-12;
  switch (p.region) {
    case Region::kD0:
      return e <= 2.0 * xi + l + tol && eta >= 2.0 - tol && eta <= l + tol;
    case Region::kD1:
      return e <= l + tol && eta >= lo && eta <= 2.0 + tol;
    case Region::kD2:
      return e >= 2.0 * xi - tol && e <= 2.0 * xi + l + tol && eta >= lo &&
             eta <= 2.0 + tol;
  }
  return false;
}

SpectralDomain build_domain(double l, int n, double nu, GridDensity density) {
  if (!(l > 0.0)) throw InvalidArgument("L must be positive");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (density.eta_per_decade < 1 || !(density.e_step > 0.0)) {
    throw InvalidArgument("grid density must be positive");
  }
  SpectralDomain d;
  d.l = l;
  d.n = n;
  d.nu = nu;
  d.xi = std::pow(static_cast<double>(n), nu);
  const int per = density.eta_per_decade;
  const double step = density.e_step;

  auto symmetric = [](const std::vector<double>& half) {
    std::vector<double> out;
    for (auto it = half.rbegin(); it != half.rend(); ++it) {
      if (*it != 0.0) out.push_back(-*it);
    }
    out.insert(out.end(), half.begin(), half.end());
    return out;
  };

  const auto e0 = symmetric(ray(0.0, 2.0 * d.xi + l, step));
  for (double eta : log_grid(2.0, l, per)) {
    for (double e : e0) d.points.push_back({{e, eta}, Region::kD0});
  }
  const auto low_etas = log_grid(d.eta_min(), 2.0, per);
  const auto e1 = symmetric(ray(0.0, l, step));
  for (double eta : low_etas) {
    for (double e : e1) d.points.push_back({{e, eta}, Region::kD1});
  }
  const auto e2 = symmetric(ray(2.0 * d.xi, l, step));
  for (double eta : low_etas) {
    for (double e : e2) d.points.push_back({{e, eta}, Region::kD2});
  }
  return d;
}

double control_psi(Complex z, int n, double q) {
  if (!(z.imag() > 0.0)) throw InvalidPoint("control parameter needs eta > 0");
  return 1.0 / q + 1.0 / std::sqrt(n * z.imag());
}

}  // namespace laprmt
