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

#ifndef LAPRMT_EIGENSOLVER_HPP_
#define LAPRMT_EIGENSOLVER_HPP_

#include <Eigen/Dense>

namespace laprmt {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column i pairs with values(i); empty if not requested
};

// Householder reduction of the lower triangle of `a` to tridiagonal form
// T = Q^T A Q. On return diag holds T's diagonal, sub(i) = T(i+1, i) with
// sub(n-1) = 0, and *q (if non-null) holds Q. `a` is overwritten.
void tridiagonalize(Eigen::MatrixXd& a, Eigen::VectorXd& diag,
                    Eigen::VectorXd& sub, Eigen::MatrixXd* q);

// Implicit-shift QL on a symmetric tridiagonal matrix. Rotations are applied
// to the columns of *z when given (pass Q to obtain eigenvectors of A, or the
// identity for eigenvectors of T). Eigenvalues are left unsorted in diag.
// Throws NonConvergence when one eigenvalue needs more than max_iterations.
void tridiagonal_ql(Eigen::VectorXd& diag, Eigen::VectorXd& sub,
                    Eigen::MatrixXd* z, int max_iterations = 50);

// Full symmetric eigendecomposition, eigenvalues ascending.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a, bool want_vectors = true);
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

}  // namespace laprmt

#endif  // LAPRMT_EIGENSOLVER_HPP_
