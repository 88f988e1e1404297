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

#include "laprmt/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "laprmt/error.hpp"

namespace laprmt {

void tridiagonalize(Eigen::MatrixXd& a, Eigen::VectorXd& diag,
                    Eigen::VectorXd& sub, Eigen::MatrixXd* q) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("tridiagonalize needs a square matrix");
  diag.resize(n);
  sub = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(std::max<Eigen::Index>(n, 1));
  Eigen::VectorXd v(n), p(n);

  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index r = n - k - 1;
    auto x = a.col(k).tail(r);
    const double sigma = x.tail(r - 1).squaredNorm();
    const double x0 = x(0);
    if (sigma == 0.0) {
      sub(k) = x0;
      tau(k) = 0.0;
      x.tail(r - 1).setZero();
      continue;
    }
    const double mu = std::sqrt(x0 * x0 + sigma);
    const double beta = x0 <= 0.0 ? mu : -mu;
    const double t = (beta - x0) / beta;
    x.tail(r - 1) /= (x0 - beta);
    sub(k) = beta;
    tau(k) = t;

    auto vk = v.head(r);
    vk(0) = 1.0;
    vk.tail(r - 1) = x.tail(r - 1);
    auto block = a.bottomRightCorner(r, r);
    auto pk = p.head(r);
    pk.noalias() = t * (block.selfadjointView<Eigen::Lower>() * vk);
    pk -= (0.5 * t * pk.dot(vk)) * vk;
    block.selfadjointView<Eigen::Lower>().rankUpdate(vk, pk, -1.0);
  }
  if (n >= 2) sub(n - 2) = a(n - 1, n - 2);
  diag = a.diagonal();

  if (q) {
    q->setIdentity(n, n);
    Eigen::RowVectorXd w(n);
    for (Eigen::Index k = n - 3; k >= 0; --k) {
      if (tau(k) == 0.0) continue;
      const Eigen::Index r = n - k - 1;
      auto vk = v.head(r);
      vk(0) = 1.0;
      vk.tail(r - 1) = a.col(k).tail(r - 1);
      auto block = q->bottomRightCorner(r, r);
      auto wk = w.head(r);
      wk.noalias() = vk.transpose() * block;
      block.noalias() -= (tau(k) * vk) * wk;
    }
  }
}

void tridiagonal_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXd* z,
                    int max_iterations) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  if (e.size() < n) e.conservativeResize(n);
  e(n - 1) = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const int rows = z ? static_cast<int>(z->rows()) : 0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == max_iterations) {
        throw NonConvergence("tridiagonal QL did not converge", std::abs(e(l)));
      }
      double g = (d(l + 1) - d(l)) / (2.0 * e(l));
      double r = std::hypot(g, 1.0);
      g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i;
      bool underflow = false;
      for (i = m - 1; i >= l; --i) {
        double f = s * e(i);
        const double b = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == 0.0) {
          d(i + 1) -= p;
          e(m) = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + 2.0 * c * b;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - b;
        if (z) {
          double* zi = z->col(i).data();
          double* zj = z->col(i + 1).data();
          for (int k = 0; k < rows; ++k) {
            f = zj[k];
            zj[k] = s * zi[k] + c * f;
            zi[k] = c * zi[k] - s * f;
          }
        }
      }
      if (underflow) continue;
      d(l) -= p;
      e(l) = g;
      e(m) = 0.0;
    } while (m != l);
  }
}

namespace {

void sort_ascending(SymmetricEigen& out) {
  const Eigen::Index n = out.values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return out.values(a) < out.values(b);
  });
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) values(i) = out.values(order[i]);
  out.values = std::move(values);
  if (out.vectors.size() > 0) {
    Eigen::MatrixXd vectors(out.vectors.rows(), n);
    for (Eigen::Index i = 0; i < n; ++i) vectors.col(i) = out.vectors.col(order[i]);
    out.vectors = std::move(vectors);
  }
}

}  // namespace

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a, bool want_vectors) {
  if (a.rows() != a.cols()) throw DimensionMismatch("eigendecomposition needs a square matrix");
  SymmetricEigen out;
  Eigen::MatrixXd work = a;
  Eigen::VectorXd sub;
  if (want_vectors) {
    Eigen::MatrixXd q;
    tridiagonalize(work, out.values, sub, &q);
    tridiagonal_ql(out.values, sub, &q);
    out.vectors = std::move(q);
  } else {
    tridiagonalize(work, out.values, sub, nullptr);
    tridiagonal_ql(out.values, sub, nullptr);
  }
  sort_ascending(out);
  return out;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  return symmetric_eigen(a, false).values;
}

}  // namespace laprmt
