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

#ifndef LAPRMT_ENSEMBLE_HPP_
#define LAPRMT_ENSEMBLE_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace laprmt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class EntryLaw : std::uint32_t {
  kBernoulliCentered = 0,
  kGaussian = 1,
  kCustom = 2,
};

// A user-supplied entry law: h = inverse_cdf(U) with U uniform on (0,1).
// Moments are declared, not estimated. abs_moments[k] is E|h|^(k+3).
struct CustomLaw {
  std::function<double(double)> inverse_cdf;
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> abs_moments;
};

struct EnsembleSpec {
  int n = 1;
  double q = 1.0;
  EntryLaw entry_law = EntryLaw::kBernoulliCentered;
  double nu = 0.1;
  std::shared_ptr<const CustomLaw> custom;
  // c_p in E|h|^p <= c_p / (q^(p-2) N), checked for declared custom moments.
  double moment_constant = 10.0;

  static EnsembleSpec from_exponent(int n, double q_exp,
                                    EntryLaw law = EntryLaw::kBernoulliCentered);
  double p() const { return q * q / n; }
  double xi() const;
  bool degenerate() const;  // p == 1
  void validate() const;
};

// Raw Erdős–Rényi Laplacian: off-diagonal 0/1, M_ii = -degree.
struct RawLaplacian {
  Matrix m;
  std::uint64_t seed = 0;
};

struct LaplacianSample {
  Matrix h;
  std::uint64_t seed = 0;
  EntryLaw law = EntryLaw::kBernoulliCentered;
  bool degenerate = false;

  int n() const { return static_cast<int>(h.rows()) - 1; }
  int size() const { return static_cast<int>(h.rows()); }
};

// First N columns of the Householder reflector that maps e to the last axis,
// each column signed so its first nonzero entry is positive.
struct ProjectionBasis {
  Matrix r;
  Vector u;  // reflector: P = I - u u^T
  Vector signs;

  int rows() const { return static_cast<int>(r.rows()); }
  int cols() const { return static_cast<int>(r.cols()); }
};

struct DecompositionParts {
  Matrix goe;
  Vector d;
  double g = 0.0;
};

// The constant unit vector (N+1)^{-1/2}(1, ..., 1).
Vector constant_unit_vector(int size);

// Overwrites the diagonal with minus the off-diagonal row sums.
void rebuild_diagonal(Matrix& h);

RawLaplacian sample_raw_laplacian(const EnsembleSpec& spec, std::uint64_t seed);
LaplacianSample center_and_rescale(const RawLaplacian& raw,
                                   const EnsembleSpec& spec);
// Inverse of center_and_rescale using the exact Bernoulli means.
Matrix reconstruct_raw(const LaplacianSample& h, const EnsembleSpec& spec);
double raw_shift_constant(const EnsembleSpec& spec);

LaplacianSample sample_laplacian_type(const EnsembleSpec& spec,
                                      std::uint64_t seed);
// Diagonal of sample_laplacian_type(spec, seed) without storing the matrix;
// bitwise equal to the full sample's diagonal.
Vector structural_diagonal(const EnsembleSpec& spec, std::uint64_t seed);
Matrix sample_goe(int n, std::uint64_t seed);

ProjectionBasis projection_basis(int n);
// R^T M R in O(N^2) through the reflector.
Matrix project_out_trivial(const Matrix& m, const ProjectionBasis& basis);
// R^T diag(d) R.
Matrix project_diagonal(const Vector& d, const ProjectionBasis& basis);

DecompositionParts sample_decomposition_parts(int n, std::uint64_t seed);
Matrix decompose_gaussian(int n, std::uint64_t seed,
                          const ProjectionBasis& basis);
Matrix decompose_gaussian(int n, std::uint64_t seed);

// E[W_ij W_kl] for the Gaussian Laplacian, indices 0-based in [0, N].
double entry_covariance_oracle(int i, int j, int k, int l, int n);
// Covariance of (R^T W R)_ab and (R^T W R)_cd, indices 0-based in [0, N).
double projected_covariance_oracle(int a, int b, int c, int d,
                                   const ProjectionBasis& basis);

// Closed-form moments of a centered, rescaled Bernoulli(p) entry.
double bernoulli_entry_mean(const EnsembleSpec& spec);
double bernoulli_entry_variance(const EnsembleSpec& spec);
double bernoulli_entry_abs_moment(const EnsembleSpec& spec, int power);

}  // namespace laprmt

#endif  // LAPRMT_ENSEMBLE_HPP_
