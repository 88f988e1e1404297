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

#include "laprmt/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "laprmt/error.hpp"
#include "laprmt/parallel.hpp"
#include "laprmt/rng.hpp"

namespace laprmt {
namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void require_upper(Complex z) {
  if (!(z.imag() > 0.0)) throw InvalidPoint("resolvent needs eta > 0");
}

CMatrix inverse_shifted(const Matrix& h, Complex z) {
  CMatrix a = h.cast<Complex>();
  a.diagonal().array() -= z;
  return Eigen::PartialPivLU<CMatrix>(a).inverse();
}

}  // namespace

Eigen::Index Spectrum::n() const {
  if (trivial_removed) return size();
  return trivial_index ? size() - 1 : size();
}

Spectrum eigendecompose(const Matrix& m, const EigenOptions& opts) {
  if (m.rows() > opts.size_cap) {
    throw TooLarge("matrix size " + std::to_string(m.rows()) + " exceeds the cap " +
                   std::to_string(opts.size_cap));
  }
  const SymmetricEigen eig =
      opts.backend ? opts.backend(m, opts.vectors) : symmetric_eigen(m, opts.vectors);
  Spectrum s;
  s.eigenvalues = eig.values;
  if (opts.vectors && s.size() > 0) {
    s.eigenvectors = eig.vectors;
    const Vector e = constant_unit_vector(static_cast<int>(m.rows()));
    const Vector overlaps = (s.eigenvectors.transpose() * e).cwiseAbs();
    Eigen::Index best = 0;
    const double overlap = overlaps.maxCoeff(&best);
    // null pair with e, marked but not required
    if (overlap > 0.99 && std::abs(s.eigenvalues(best)) < 1e-8) {
      s.trivial_index = best;
      s.trivial_eigenvalue = s.eigenvalues(best);
      s.trivial_overlap = overlap;
    }
  }
  return s;
}

void identify_trivial(Spectrum& s, double threshold) {
  if (s.eigenvectors.cols() != s.size() || s.size() == 0) {
    throw InvalidArgument("trivial identification needs eigenvectors");
  }
  const Vector e = constant_unit_vector(static_cast<int>(s.eigenvectors.rows()));
  const Vector overlaps = (s.eigenvectors.transpose() * e).cwiseAbs();
  Eigen::Index best = 0;
  const double overlap = overlaps.maxCoeff(&best);
  if (overlap <= threshold) {
    throw TrivialNotFound("no eigenvector has overlap > " + std::to_string(threshold) +
                          " with e (best " + std::to_string(overlap) + ")");
  }
  s.trivial_index = best;
  s.trivial_eigenvalue = s.eigenvalues(best);
  s.trivial_overlap = overlap;
}

Spectrum nontrivial_spectrum(const LaplacianSample& h, const EigenOptions& opts) {
  if (!opts.vectors) {
    Spectrum s;
    s.eigenvalues = nontrivial_eigenvalues(h.h, projection_basis(h.n()), opts);
    s.trivial_removed = true;
    s.trivial_overlap = 1.0;
    return s;
  }
  Spectrum full = eigendecompose(h.h, opts);
  identify_trivial(full, opts.trivial_overlap);
  if (std::abs(full.trivial_eigenvalue) >= 1e-8) {
    throw TrivialNotFound("trivial eigenvalue " + std::to_string(full.trivial_eigenvalue) +
                          " is not numerically zero");
  }
  const Eigen::Index t = *full.trivial_index;
  const Eigen::Index n = full.size() - 1;
  Spectrum s;
  s.eigenvalues.resize(n);
  s.eigenvectors.resize(full.eigenvectors.rows(), n);
  for (Eigen::Index i = 0, j = 0; i < full.size(); ++i) {
    if (i == t) continue;
    s.eigenvalues(j) = full.eigenvalues(i);
    s.eigenvectors.col(j) = full.eigenvectors.col(i);
    ++j;
  }
  s.trivial_removed = true;
  s.trivial_eigenvalue = full.trivial_eigenvalue;
  s.trivial_overlap = full.trivial_overlap;
  return s;
}

Vector nontrivial_eigenvalues(const Matrix& h, const ProjectionBasis& basis,
                              const EigenOptions& opts) {
  EigenOptions values_only = opts;
  values_only.vectors = false;
  return eigendecompose(project_out_trivial(h, basis), values_only).eigenvalues;
}

Complex empirical_stieltjes(const Vector& lambda, Complex z, double norm) {
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) s += 1.0 / (lambda(i) - z);
  return s / norm;
}

Complex empirical_stieltjes(const Spectrum& s, Complex z, bool include_trivial) {
  require_upper(z);
  const auto n = static_cast<double>(s.n());
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!include_trivial && s.trivial_index && *s.trivial_index == i) continue;
    sum += 1.0 / (s.eigenvalues(i) - z);
  }
  if (include_trivial && s.trivial_removed) sum += 1.0 / (s.trivial_eigenvalue - z);
  return sum / n;
}

ResolventSlice resolvent(const Matrix& h, Complex z) {
  require_upper(z);
  return {z, inverse_shifted(h, z)};
}

ResolventSlice resolvent_from_spectrum(const Spectrum& s, Complex z) {
  require_upper(z);
  if (s.eigenvectors.cols() != s.size()) {
    throw InvalidArgument("resolvent from spectrum needs eigenvectors");
  }
  Eigen::VectorXcd inv(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = 1.0 / (s.eigenvalues(i) - z);
  const CMatrix v = s.eigenvectors.cast<Complex>();
  return {z, v * inv.asDiagonal() * v.transpose()};
}

Eigen::VectorXcd resolvent_diagonal(const Spectrum& s, Complex z) {
  require_upper(z);
  Vector re(s.size()), im(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const Complex inv = 1.0 / (s.eigenvalues(i) - z);
    re(i) = inv.real();
    im(i) = inv.imag();
  }
  const Matrix sq = s.eigenvectors.array().square().matrix();
  const Vector a = sq * re;
  const Vector b = sq * im;
  Eigen::VectorXcd out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out(i) = {a(i), b(i)};
  return out;
}

ResolventSlice resolvent_hat(const Matrix& h, Complex z, const ProjectionBasis& basis,
                             bool check) {
  require_upper(z);
  const CMatrix inner = inverse_shifted(project_out_trivial(h, basis), z);
  const CMatrix r = basis.r.cast<Complex>();
  ResolventSlice out{z, r * inner * r.transpose()};
  if (check) {
    const CMatrix g = inverse_shifted(h, z);
    const Complex expected = 1.0 / (z * static_cast<double>(h.rows()));
    const double scale = std::max(1.0, max_abs(g));
    const double defect = (out.g - g).array().unaryExpr([&](Complex x) {
      return std::abs(x - expected);
    }).maxCoeff() / scale;
    if (defect > 1e-8) {
      throw RankOneViolation("G_hat - G deviates from e e^T / z by " +
                             std::to_string(defect));
    }
  }
  return out;
}

double rank_one_defect(const Matrix& h, Complex z, const ProjectionBasis& basis) {
  const CMatrix g = resolvent(h, z).g;
  const CMatrix ghat = resolvent_hat(h, z, basis, false).g;
  const Complex expected = 1.0 / (z * static_cast<double>(h.rows()));
  double worst = 0.0;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      worst = std::max(worst, std::abs(ghat(i, j) - g(i, j) - expected));
    }
  }
  return worst / std::max(1.0, max_abs(g));
}

Matrix minor_matrix(const Matrix& h, int k) {
  const int size = static_cast<int>(h.rows());
  if (k < 0 || k >= size) throw InvalidArgument("minor index out of range");
  Matrix out(size - 1, size - 1);
  for (int j = 0, jj = 0; j < size; ++j) {
    if (j == k) continue;
    for (int i = 0, ii = 0; i < size; ++i) {
      if (i == k) continue;
      out(ii++, jj) = h(i, j);
    }
    ++jj;
  }
  return out;
}

Matrix vertex_deleted_laplacian(const Matrix& h, int k) {
  Matrix out = minor_matrix(h, k);
  rebuild_diagonal(out);
  return out;
}

double IdentityDefects::max() const {
  return std::max({schur, minor, row, ward, tilde_left, tilde_right, rank_one, error_term});
}

Complex error_term_schur(const Matrix& h, int k, Complex z, Complex g_kk, Complex m_n) {
  return h(k, k) - z - m_n - 1.0 / g_kk;
}

IdentityDefects identity_defects(const LaplacianSample& sample, Complex z, int k,
                                 const ProjectionBasis& basis) {
  require_upper(z);
  const Matrix& h = sample.h;
  const int size = sample.size();
  const int n = sample.n();
  if (k < 0 || k >= size) throw InvalidArgument("identity index out of range");
  const double eta = z.imag();

  const CMatrix g = resolvent(h, z).g;
  const CMatrix gk = resolvent(minor_matrix(h, k), z).g;
  const CMatrix gt = resolvent(vertex_deleted_laplacian(h, k), z).g;
  // h_k restricted to the minor's index order.
  Vector hk(n);
  for (int i = 0, ii = 0; i < size; ++i) {
    if (i != k) hk(ii++) = h(k, i);
  }
  auto full = [k](int ii) { return ii < k ? ii : ii + 1; };
  const double gscale = max_abs(g);
  const double gkscale = max_abs(gk);

  IdentityDefects d;
  const Eigen::VectorXcd hkc = hk.cast<Complex>();
  const Complex quad = hkc.transpose() * gk * hkc;
  const Complex g_kk = g(k, k);
  d.schur = std::abs(g_kk - 1.0 / (h(k, k) - z - quad)) / std::abs(g_kk);

  for (int jj = 0; jj < n; ++jj) {
    for (int ii = 0; ii < n; ++ii) {
      const int i = full(ii), j = full(jj);
      const Complex rhs = gk(ii, jj) + g(i, k) * g(k, j) / g_kk;
      d.minor = std::max(d.minor, std::abs(g(i, j) - rhs) / gscale);
    }
  }
  const Eigen::VectorXcd gkh = gk * hkc;
  for (int ii = 0; ii < n; ++ii) {
    const Complex rhs = -g_kk * gkh(ii);
    d.row = std::max(d.row, std::abs(g(full(ii), k) - rhs) / gscale);
  }
  for (int i = 0; i < size; ++i) {
    const double lhs = g.row(i).squaredNorm();
    const double rhs = g(i, i).imag() / eta;
    d.ward = std::max(d.ward, std::abs(lhs - rhs) / rhs);
  }
  const CMatrix dmat = hkc.asDiagonal();
  const CMatrix left = gk - gt - gk * dmat * gt;
  const CMatrix right = gk - gt - gt * dmat * gk;
  d.tilde_left = max_abs(left) / gkscale;
  d.tilde_right = max_abs(right) / gkscale;
  d.rank_one = rank_one_defect(h, z, basis);

  // Explicit error term; the middle sum enters with a plus sign so that the
  // Schur form G_kk = 1/(H_kk - z - m_N - E_k) holds identically.
  const Complex m_n = g.trace() / static_cast<double>(n);
  const Complex m_nk = gk.trace() / static_cast<double>(n);
  Complex diag_part = 0.0;
  for (int ii = 0; ii < n; ++ii) {
    diag_part += (hk(ii) * hk(ii) - 1.0 / n) * gk(ii, ii);
  }
  Complex off = quad;
  for (int ii = 0; ii < n; ++ii) off -= hk(ii) * hk(ii) * gk(ii, ii);
  d.e_k = off + diag_part - (m_n - m_nk);
  const Complex schur_form = error_term_schur(h, k, z, g_kk, m_n);
  const double scale = std::max({1.0, std::abs(1.0 / g_kk), std::abs(schur_form)});
  d.error_term = std::abs(d.e_k - schur_form) / scale;
  return d;
}

VerificationReport identity_suite(const LaplacianSample& h, Complex z, int k) {
  const IdentityDefects d = identity_defects(h, z, k, projection_basis(h.n()));
  VerificationReport rep;
  rep.name = "identities";
  rep.seed = h.seed;
  rep.trials = 1;
  const double tol = 1e-9;
  rep.check_le("schur", d.schur, tol);
  rep.check_le("minor", d.minor, tol);
  rep.check_le("row", d.row, tol);
  rep.check_le("ward", d.ward, tol);
  rep.check_le("tilde_left", d.tilde_left, tol);
  rep.check_le("tilde_right", d.tilde_right, tol);
  rep.check_le("rank_one", d.rank_one, tol);
  rep.check_le("error_term", d.error_term, tol);
  rep.stats["e_k_abs"] = std::abs(d.e_k);
  return rep;
}

IdentityRun run_identities(const EnsembleSpec& spec, const std::vector<double>& etas,
                           int trials, std::uint64_t seed, int threads, double tolerance) {
  spec.validate();
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (etas.empty()) throw InvalidArgument("need at least one eta");
  const ProjectionBasis basis = projection_basis(spec.n);
  const int size = spec.n + 1;
  const auto per_trial = parallel_map<std::vector<IdentityDefects>>(
      static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        const std::uint64_t s = derive_seed(seed, t);
        const LaplacianSample h = sample_laplacian_type(spec, s);
        CounterStream pick(s, StreamTag::kMisc, 1);
        std::vector<IdentityDefects> out;
        for (double eta : etas) {
          const double e = -3.0 + 6.0 * pick.uniform();
          const int k = std::min(size - 1, static_cast<int>(pick.uniform() * size));
          out.push_back(identity_defects(h, Complex(e, eta), k, basis));
        }
        return out;
      });

  IdentityRun run;
  run.eta = etas;
  for (const auto& v : per_trial) run.defects.insert(run.defects.end(), v.begin(), v.end());
  auto worst = [&](double IdentityDefects::*field) {
    double w = 0.0;
    for (const auto& d : run.defects) w = std::max(w, d.*field);
    return w;
  };
  VerificationReport& rep = run.report;
  rep.name = "identities";
  rep.seed = seed;
  rep.trials = trials;
  rep.stats["n"] = spec.n;
  rep.stats["q"] = spec.q;
  rep.stats["eta"] = etas;
  rep.stats["tolerance"] = tolerance;
  const std::pair<const char*, double IdentityDefects::*> fields[] = {
      {"schur", &IdentityDefects::schur},           {"minor", &IdentityDefects::minor},
      {"row", &IdentityDefects::row},               {"ward", &IdentityDefects::ward},
      {"tilde_left", &IdentityDefects::tilde_left}, {"tilde_right", &IdentityDefects::tilde_right},
      {"rank_one", &IdentityDefects::rank_one},     {"error_term", &IdentityDefects::error_term},
  };
  for (const auto& [name, field] : fields) rep.check_le(name, worst(field), tolerance);
  return run;
}

}  // namespace laprmt
