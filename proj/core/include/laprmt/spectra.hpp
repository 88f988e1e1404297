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

#ifndef LAPRMT_SPECTRA_HPP_
#define LAPRMT_SPECTRA_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "laprmt/domain.hpp"
#include "laprmt/eigensolver.hpp"
#include "laprmt/ensemble.hpp"
#include "laprmt/report.hpp"

namespace laprmt {

using CMatrix = Eigen::MatrixXcd;

using EigenBackend = std::function<SymmetricEigen(const Matrix&, bool want_vectors)>;

struct EigenOptions {
  bool vectors = true;
  int size_cap = 4096;
  double trivial_overlap = 0.99;
  EigenBackend backend;  // empty: the in-repo Householder + QL solver
};

struct Spectrum {
  Vector eigenvalues;  // ascending
  Matrix eigenvectors;  // empty when only eigenvalues were requested
  std::optional<Eigen::Index> trivial_index;
  // Set when the trivial pair has been removed from eigenvalues/eigenvectors.
  bool trivial_removed = false;
  double trivial_eigenvalue = 0.0;
  double trivial_overlap = 0.0;

  Eigen::Index size() const { return eigenvalues.size(); }
  // N: number of nontrivial eigenvalues.
  Eigen::Index n() const;
};

Spectrum eigendecompose(const Matrix& m, const EigenOptions& opts = {});

// Marks the eigenpair with the largest overlap with e as trivial.
void identify_trivial(Spectrum& s, double threshold = 0.99);

// The N nontrivial eigenpairs. With opts.vectors == false the eigenvalues
// come from R^T H R, which skips the eigenvector-based identification.
Spectrum nontrivial_spectrum(const LaplacianSample& h, const EigenOptions& opts = {});
Vector nontrivial_eigenvalues(const Matrix& h, const ProjectionBasis& basis,
                              const EigenOptions& opts = {});

// (1/N) sum 1/(lambda_i - z), N = s.n(). include_trivial adds the trivial
// eigenvalue's term, matching m_N = (1/N) Tr G.
Complex empirical_stieltjes(const Spectrum& s, Complex z, bool include_trivial = true);
Complex empirical_stieltjes(const Vector& lambda, Complex z, double norm);

struct ResolventSlice {
  Complex z;
  CMatrix g;
};

ResolventSlice resolvent(const Matrix& h, Complex z);
ResolventSlice resolvent_from_spectrum(const Spectrum& s, Complex z);
// Diagonal of G from eigenpairs in O(N^2).
Eigen::VectorXcd resolvent_diagonal(const Spectrum& s, Complex z);

// R (R^T H R - z)^{-1} R^T. When check is set, verifies
// G_hat - (H - z)^{-1} = e e^T / z to 1e-8 and throws RankOneViolation.
ResolventSlice resolvent_hat(const Matrix& h, Complex z, const ProjectionBasis& basis,
                             bool check = true);
double rank_one_defect(const Matrix& h, Complex z, const ProjectionBasis& basis);

// Resolvent of the Laplacian of the model with vertex k deleted:
// H^(k) + diag(h_ik), rows/columns ordered as in H with k skipped.
Matrix vertex_deleted_laplacian(const Matrix& h, int k);
Matrix minor_matrix(const Matrix& h, int k);

struct IdentityDefects {
  double schur = 0.0;
  double minor = 0.0;
  double row = 0.0;
  double ward = 0.0;
  double tilde_left = 0.0;
  double tilde_right = 0.0;
  double rank_one = 0.0;
  double error_term = 0.0;  // explicit E_k against the Schur form
  Complex e_k;
  double max() const;
};

IdentityDefects identity_defects(const LaplacianSample& h, Complex z, int k,
                                 const ProjectionBasis& basis);
VerificationReport identity_suite(const LaplacianSample& h, Complex z, int k);

struct IdentityRun {
  VerificationReport report;
  std::vector<double> eta;
  std::vector<IdentityDefects> defects;  // one per (trial, eta)
};

// Random instances with z = E + i eta, E uniform in [-3, 3] and k uniform.
IdentityRun run_identities(const EnsembleSpec& spec, const std::vector<double>& etas,
                           int trials, std::uint64_t seed, int threads = 1,
                           double tolerance = 1e-9);

// E_k(z) from the Schur form G_kk = 1/(H_kk - z - m_N - E_k).
Complex error_term_schur(const Matrix& h, int k, Complex z, Complex g_kk, Complex m_n);

}  // namespace laprmt

#endif  // LAPRMT_SPECTRA_HPP_
