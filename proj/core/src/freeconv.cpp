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

#include "laprmt/freeconv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "laprmt/error.hpp"
#include "laprmt/special.hpp"

namespace laprmt {
namespace {

const Complex kI(0.0, 1.0);

struct KernelValue {
  Complex f;
  Complex df;  // derivative in m
};

using Kernel = std::function<KernelValue(Complex z, Complex m)>;

const GaussHermiteRule& hermite_rule(int order) {
  static const GaussHermiteRule rule201 = gauss_hermite(201);
  if (order == 201) return rule201;
  thread_local GaussHermiteRule custom;
  if (static_cast<int>(custom.nodes.size()) != order) custom = gauss_hermite(order);
  return custom;
}

KernelValue gaussian_kernel(Complex w, const SolverOptions& opts) {
  if (opts.kernel == GaussianKernel::kFaddeeva) {
    const Complex g = gaussian_stieltjes(w);
    return {g, -1.0 - w * g};
  }
  const auto& rule = hermite_rule(opts.hermite_order);
  Complex f = 0.0, df = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Complex inv = 1.0 / (std::numbers::sqrt2 * rule.nodes[k] - w);
    f += rule.weights[k] * inv;
    df += rule.weights[k] * inv * inv;
  }
  const double norm = std::sqrt(std::numbers::pi);
  return {f / norm, df / norm};
}

// Damped Newton iteration on m - F(m) = 0. The step length starts at 1 and
// halves when the iterate leaves the upper half-plane or the residual grows.
SolveResult iterate(const Kernel& kernel, Complex z, Complex m, const SolverOptions& opts,
                    int budget) {
  KernelValue kv = kernel(z, m);
  double res = std::abs(m - kv.f);
  int used = 0;
  while (res >= opts.tol) {
    if (used >= budget) throw NonConvergence("fixed-point iteration exhausted its budget", res);
    const Complex denom = 1.0 - kv.df;
    const Complex step = std::abs(denom) > 1e-300 ? (m - kv.f) / denom : (m - kv.f);
    double alpha = 1.0;
    while (true) {
      ++used;
      const Complex cand = m - alpha * step;
      if (cand.imag() > 0.0) {
        const KernelValue kc = kernel(z, cand);
        const double rc = std::abs(cand - kc.f);
        if (rc < res || alpha <= opts.damping_floor) {
          m = cand;
          kv = kc;
          res = rc;
          break;
        }
      } else if (alpha <= opts.damping_floor) {
        // Convex combination with F(m) stays in the upper half-plane.
        m = (1.0 - opts.damping_floor) * m + opts.damping_floor * kv.f;
        kv = kernel(z, m);
        res = std::abs(m - kv.f);
        break;
      }
      alpha = std::max(alpha / 2.0, opts.damping_floor);
      if (used >= budget) throw NonConvergence("fixed-point iteration exhausted its budget", res);
    }
  }
  // A few undamped polishing steps push the defect well below tol.
  for (int polish = 0; polish < 3 && res > 0.0; ++polish) {
    const Complex denom = 1.0 - kv.df;
    if (std::abs(denom) <= 1e-300) break;
    const Complex cand = m - (m - kv.f) / denom;
    if (!(cand.imag() > 0.0)) break;
    const KernelValue kc = kernel(z, cand);
    const double rc = std::abs(cand - kc.f);
    ++used;
    if (!(rc < res)) break;
    m = cand;
    kv = kc;
    res = rc;
  }
  return {m, res, used};
}

SolveResult solve_with_continuation(const Kernel& kernel, Complex z, const SolverOptions& opts,
                                    std::optional<Complex> guess) {
  const double eta = z.imag();
  if (!(eta > 0.0)) throw InvalidPoint("spectral parameter needs eta > 0");
  if (guess && guess->imag() > 0.0) {
    try {
      return iterate(kernel, z, *guess, opts, 100);
    } catch (const NonConvergence&) {
    }
  }
  double level = std::max(eta, opts.eta_start);
  Complex m = kI;
  int total = 0;
  double res = 0.0;
  while (true) {
    const SolveResult r =
        iterate(kernel, {z.real(), level}, m, opts, opts.max_iterations - total);
    m = r.m;
    res = r.residual;
    total += r.iterations;
    if (level <= eta) break;
    level = std::max(level * opts.eta_factor, eta);
  }
  return {m, res, total};
}

Kernel mfc_kernel(const SolverOptions& opts) {
  return [&opts](Complex z, Complex m) { return gaussian_kernel(z + m, opts); };
}

double resolve_norm(const std::vector<double>& w, double norm) {
  return norm > 0.0 ? norm : static_cast<double>(w.size());
}

}  // namespace

SolveResult solve_mfc_detailed(Complex z, const SolverOptions& opts,
                               std::optional<Complex> guess) {
  return solve_with_continuation(mfc_kernel(opts), z, opts, guess);
}

Complex solve_mfc(Complex z, const SolverOptions& opts) {
  return solve_mfc_detailed(z, opts).m;
}

double mfc_residual(Complex z, Complex m) {
  return std::abs(m - gaussian_stieltjes(z + m));
}

Complex mfc_derivative(Complex z, Complex m) {
  const Complex d = gaussian_stieltjes_derivative(z + m);
  return d / (1.0 - d);
}

Complex solve_mfc_scaled(Complex z, double t, int n, const SolverOptions& opts) {
  if (t < 0.0) throw InvalidArgument("flow time must be nonnegative");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  const double s = std::sqrt(1.0 + (-std::expm1(-t)) / n);
  const Kernel kernel = [&opts, s](Complex zz, Complex m) {
    const KernelValue kv = gaussian_kernel((zz + m) / s, opts);
    return KernelValue{kv.f / s, kv.df / (s * s)};
  };
  return solve_with_continuation(kernel, z, opts, std::nullopt).m;
}

SolveResult solve_mt_detailed(Complex z, const std::vector<double>& lambda,
                              double vartheta, const SolverOptions& opts) {
  if (lambda.empty()) throw InvalidArgument("solve_mt needs at least one eigenvalue");
  const double v2 = vartheta * vartheta;
  const double inv_n = 1.0 / static_cast<double>(lambda.size());
  const Kernel kernel = [&lambda, v2, inv_n](Complex zz, Complex m) {
    Complex f = 0.0, df = 0.0;
    const Complex shift = zz + v2 * m;
    for (double l : lambda) {
      const Complex inv = 1.0 / (l - shift);
      f += inv;
      df += inv * inv;
    }
    return KernelValue{f * inv_n, v2 * df * inv_n};
  };
  return solve_with_continuation(kernel, z, opts, std::nullopt);
}

Complex solve_mt(Complex z, const std::vector<double>& lambda, double vartheta,
                 const SolverOptions& opts) {
  return solve_mt_detailed(z, lambda, vartheta, opts).m;
}

double vartheta_of_time(double t) { return std::sqrt(-std::expm1(-t) / 2.0); }

double density_fc(double e, const SolverOptions& opts) {
  const double rho = solve_mfc({e, kDensityEta}, opts).imag() / std::numbers::pi;
  return rho < 1e-14 ? 0.0 : rho;
}

DensityTable tabulate_density(double e_max, double step, const SolverOptions& opts) {
  if (!(e_max > 0.0) || !(step > 0.0)) throw InvalidArgument("bad density grid");
  DensityTable t;
  const int half = static_cast<int>(std::ceil(e_max / step - 1e-9));
  t.e_max = half * step;
  t.step = step;
  const int count = 2 * half + 1;
  t.e.resize(count);
  t.m.resize(count);
  t.residual.resize(count);
  t.rho.resize(count);
  t.drho.resize(count);

  // Solve on E >= 0 with warm starts from the neighbour, mirror the rest
  // through m(-E + i eta) = -conj(m(E + i eta)).
  std::optional<Complex> guess;
  const Kernel kernel = mfc_kernel(opts);
  for (int j = 0; j <= half; ++j) {
    const double e = j * step;
    const SolveResult r = solve_with_continuation(kernel, {e, kDensityEta}, opts, guess);
    guess = r.m;
    double rho = r.m.imag() / std::numbers::pi;
    double drho = mfc_derivative({e, kDensityEta}, r.m).imag() / std::numbers::pi;
    if (rho < 1e-14) {
      rho = 0.0;
      drho = 0.0;
    }
    const int pos = half + j;
    const int neg = half - j;
    t.e[pos] = e;
    t.m[pos] = r.m;
    t.residual[pos] = r.residual;
    t.rho[pos] = rho;
    t.drho[pos] = drho;
    t.e[neg] = -e;
    t.m[neg] = -std::conj(r.m);
    t.residual[neg] = r.residual;
    t.rho[neg] = rho;
    t.drho[neg] = -drho;
  }

  // Trapezoid with the endpoint-derivative correction (fourth order).
  t.cdf.assign(count, 0.0);
  double second = 0.0;
  const double h = step;
  for (int k = 0; k + 1 < count; ++k) {
    const double inc = 0.5 * h * (t.rho[k] + t.rho[k + 1]) +
                       h * h / 12.0 * (t.drho[k] - t.drho[k + 1]);
    t.cdf[k + 1] = t.cdf[k] + inc;
    const double a = t.e[k], b = t.e[k + 1];
    const double fa = a * a * t.rho[k], fb = b * b * t.rho[k + 1];
    const double da = 2.0 * a * t.rho[k] + a * a * t.drho[k];
    const double db = 2.0 * b * t.rho[k + 1] + b * b * t.drho[k + 1];
    second += 0.5 * h * (fa + fb) + h * h / 12.0 * (da - db);
  }
  t.total_mass = t.cdf.back();
  t.second_moment = second;
  for (double& c : t.cdf) c /= t.total_mass;
  return t;
}

double cdf_inverse(const DensityTable& t, double level) {
  if (level <= 0.0) return t.e.front();
  if (level >= 1.0) return t.e.back();
  const auto it = std::upper_bound(t.cdf.begin(), t.cdf.end(), level);
  const std::size_t k = static_cast<std::size_t>(it - t.cdf.begin()) - 1;
  const double h = t.step;
  const double c0 = t.cdf[k], c1 = t.cdf[k + 1];
  const double d0 = t.rho[k] / t.total_mass * h;
  const double d1 = t.rho[k + 1] / t.total_mass * h;
  // Cubic Hermite interpolant of the CDF on the cell, s in [0, 1].
  auto value = [&](double s) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * c0 + (s3 - 2 * s2 + s) * d0 +
           (-2 * s3 + 3 * s2) * c1 + (s3 - s2) * d1;
  };
  double lo = 0.0, hi = 1.0;
  for (int it2 = 0; it2 < 100 && hi - lo > 1e-15; ++it2) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) < level ? lo : hi) = mid;
  }
  return t.e[k] + 0.5 * (lo + hi) * h;
}

VerificationReport density_check(const DensityTable& table, double mass_tol,
                                 double moment_tol, double residual_tol) {
  VerificationReport rep;
  rep.name = "density";
  double worst = 0.0;
  for (double r : table.residual) worst = std::max(worst, r);
  rep.stats["e_max"] = table.e_max;
  rep.stats["step"] = table.step;
  rep.stats["eta"] = kDensityEta;
  rep.stats["total_mass"] = table.total_mass;
  rep.stats["second_moment"] = table.second_moment;
  rep.stats["max_residual"] = worst;
  rep.check_le("mass_error", std::abs(table.total_mass - 1.0), mass_tol);
  rep.check_le("second_moment_error", std::abs(table.second_moment - 2.0), moment_tol);
  rep.check_le("max_residual", worst, residual_tol);
  return rep;
}

ClassicalLocations classical_locations(int n, const DensityTable& table) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  ClassicalLocations out;
  out.n = n;
  out.gamma.resize(n);
  out.gamma_sc.resize(n);
  for (int i = 1; i <= n; ++i) {
    const double level = (i - 0.5) / n;
    out.gamma[i - 1] = cdf_inverse(table, level);
    out.gamma_sc[i - 1] = semicircle_quantile(level);
  }
  return out;
}

ClassicalLocations classical_locations(int n) {
  static const DensityTable table = tabulate_density();
  return classical_locations(n, table);
}

Complex stability_factor(const std::vector<double>& w, Complex z, Complex m, double norm) {
  Complex s = 0.0;
  for (double x : w) {
    const Complex inv = 1.0 / (x - z - m);
    s += inv * inv;
  }
  return 1.0 - s / resolve_norm(w, norm);
}

Complex stability_epsilon(const std::vector<double>& w, Complex z, Complex m, double norm) {
  Complex s = 0.0;
  for (double x : w) s += 1.0 / (x - z - m);
  return s / resolve_norm(w, norm) - m;
}

StabilityBounds stability_bounds(double c_star) {
  StabilityBounds b;
  b.c1 = std::min(c_star * c_star * c_star / 16.0, c_star / 2.0);
  b.lower = c_star * c_star / 16.0;
  b.upper = 1.0 + 1.0 / (c_star * c_star);
  return b;
}

RegularityStats regularity_scan(const SpectralDomain& domain, Region region,
                                const SolverOptions& opts) {
  RegularityStats st;
  st.c_star = std::numeric_limits<double>::infinity();
  // Grid rows keyed by eta, columns by E.
  std::map<double, std::map<double, Complex>> rows;
  for (const auto& p : domain.points) {
    if (p.region != region) continue;
    const SolveResult r = solve_mfc_detailed(p.z, opts);
    rows[p.z.imag()][p.z.real()] = r.m;
    st.c_star = std::min(st.c_star, r.m.imag());
    st.max_abs_m = std::max(st.max_abs_m, std::abs(r.m));
    st.max_residual = std::max(st.max_residual, r.residual);
    ++st.points;
  }
  auto quotient = [](double x0, double y0, Complex m0, double x1, double y1, Complex m1) {
    return std::abs(m1 - m0) / std::hypot(x1 - x0, y1 - y0);
  };
  const std::map<double, Complex>* prev = nullptr;
  double prev_eta = 0.0;
  for (const auto& [eta, row] : rows) {
    for (auto it = row.begin(); it != row.end() && std::next(it) != row.end(); ++it) {
      const auto nx = std::next(it);
      st.lipschitz = std::max(st.lipschitz, quotient(it->first, eta, it->second,
                                                     nx->first, eta, nx->second));
    }
    if (prev) {
      for (const auto& [e, m] : row) {
        const auto below = prev->find(e);
        if (below != prev->end()) {
          st.lipschitz = std::max(st.lipschitz,
                                  quotient(e, prev_eta, below->second, e, eta, m));
        }
      }
    }
    prev = &row;
    prev_eta = eta;
  }
  if (st.points == 0) st.c_star = 0.0;
  return st;
}

double operational_c_star(double l, int n, double nu, GridDensity density,
                          const SolverOptions& opts) {
  return regularity_scan(build_domain(l, n, nu, density), Region::kD1, opts).c_star;
}

VerificationReport regularity_report(double l, int n, double nu, GridDensity density,
                                     const SolverOptions& opts) {
  VerificationReport rep;
  rep.name = "regularity";
  const RegularityStats coarse = regularity_scan(build_domain(l, n, nu, density),
                                                 Region::kD1, opts);
  const RegularityStats fine = regularity_scan(build_domain(l, n, nu, density.refined()),
                                               Region::kD1, opts);
  rep.stats["points"] = coarse.points;
  rep.stats["c_star"] = coarse.c_star;
  rep.stats["max_abs_m"] = coarse.max_abs_m;
  rep.stats["max_residual"] = coarse.max_residual;
  rep.stats["lipschitz"] = coarse.lipschitz;
  rep.stats["lipschitz_refined"] = fine.lipschitz;
  rep.check_le("max_abs_m", coarse.max_abs_m, 1.0 + 1e-9);
  rep.check("min_im_m_positive", coarse.c_star > 0.0, coarse.c_star, 0.0);
  rep.check_le("max_residual", coarse.max_residual, opts.tol);
  // The difference quotient must not blow up under refinement.
  rep.check_le("lipschitz_refinement_ratio", fine.lipschitz / coarse.lipschitz, 2.0);
  return rep;
}

}  // namespace laprmt
