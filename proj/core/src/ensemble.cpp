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

#include "laprmt/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "laprmt/error.hpp"
#include "laprmt/rng.hpp"

namespace laprmt {
namespace {

constexpr double kDenseThreshold = 0.1;

void require_bernoulli(const EnsembleSpec& spec) {
  if (spec.entry_law != EntryLaw::kBernoulliCentered) {
    throw InvalidArgument("raw Laplacian sampling needs the Bernoulli law");
  }
}

void add_edge(Matrix& m, int i, int j) {
  m(i, j) = 1.0;
  m(j, i) = 1.0;
}

void sample_dense_edges(Matrix& m, double p, std::uint64_t seed) {
  const int size = static_cast<int>(m.rows());
  for (int i = 0; i < size; ++i) {
    CounterStream stream(seed, StreamTag::kOffDiagonal, static_cast<std::uint64_t>(i));
    for (int j = i + 1; j < size; ++j) {
      if (stream.uniform() < p) add_edge(m, i, j);
    }
  }
}

// Geometric inter-arrival skipping: expected O(pN) draws per row.
void sample_sparse_edges(Matrix& m, double p, std::uint64_t seed) {
  if (p <= 0.0) return;
  const int size = static_cast<int>(m.rows());
  const double log_q = std::log1p(-p);
  for (int i = 0; i < size; ++i) {
    CounterStream stream(seed, StreamTag::kSparseRow, static_cast<std::uint64_t>(i));
    double j = i;
    while (true) {
      j += std::floor(std::log(stream.uniform()) / log_q) + 1.0;
      if (j >= size) break;
      add_edge(m, i, static_cast<int>(j));
    }
  }
}

}  // namespace

EnsembleSpec EnsembleSpec::from_exponent(int n, double q_exp, EntryLaw law) {
  EnsembleSpec spec;
  spec.n = n;
  spec.entry_law = law;
  spec.q = q_exp == 0.5 ? std::sqrt(static_cast<double>(n))
                        : std::pow(static_cast<double>(n), q_exp);
  return spec;
}

double EnsembleSpec::xi() const { return std::pow(static_cast<double>(n), nu); }

bool EnsembleSpec::degenerate() const {
  return entry_law == EntryLaw::kBernoulliCentered && p() >= 1.0 - 1e-12;
}

void EnsembleSpec::validate() const {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (!(q >= 0.0)) throw InvalidArgument("q must be nonnegative");
  const double root = std::sqrt(static_cast<double>(n));
  if (q > root * (1.0 + 1e-12)) {
    throw InvalidArgument("q must satisfy q <= N^{1/2} (p = q^2/N <= 1)");
  }
  if (!(nu > 0.0)) throw InvalidArgument("nu must be positive");
  if (entry_law == EntryLaw::kCustom) {
    if (!custom || !custom->inverse_cdf) {
      throw InvalidArgument("custom entry law needs an inverse CDF");
    }
    if (std::abs(custom->mean) > 1e-9) {
      throw InvalidArgument("custom entry law must have mean 0");
    }
    if (std::abs(custom->variance * n - 1.0) > 1e-9) {
      throw InvalidArgument("custom entry law must have variance 1/N");
    }
    for (std::size_t k = 0; k < custom->abs_moments.size(); ++k) {
      const double power = static_cast<double>(k + 3);
      const double bound = moment_constant / (std::pow(q, power - 2.0) * n);
      if (custom->abs_moments[k] > bound) {
        throw InvalidArgument("custom entry law violates the moment bound at p = " +
                              std::to_string(k + 3));
      }
    }
  }
}

Vector constant_unit_vector(int size) {
  return Vector::Constant(size, 1.0 / std::sqrt(static_cast<double>(size)));
}

void rebuild_diagonal(Matrix& h) {
  const Eigen::Index size = h.rows();
  for (Eigen::Index i = 0; i < size; ++i) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < size; ++k) {
      if (k != i) s += h(k, i);
    }
    h(i, i) = -s;
  }
}

RawLaplacian sample_raw_laplacian(const EnsembleSpec& spec, std::uint64_t seed) {
  require_bernoulli(spec);
  spec.validate();
  const double p = std::min(spec.p(), 1.0);
  RawLaplacian raw;
  raw.seed = seed;
  raw.m = Matrix::Zero(spec.n + 1, spec.n + 1);
  if (p < kDenseThreshold) {
    sample_sparse_edges(raw.m, p, seed);
  } else {
    sample_dense_edges(raw.m, p, seed);
  }
  rebuild_diagonal(raw.m);
  return raw;
}

LaplacianSample center_and_rescale(const RawLaplacian& raw,
                                   const EnsembleSpec& spec) {
  require_bernoulli(spec);
  if (!(spec.q > 0.0)) throw InvalidArgument("rescaling needs q > 0");
  if (raw.m.rows() != spec.n + 1 || raw.m.cols() != spec.n + 1) {
    throw DimensionMismatch("raw matrix does not match spec dimension");
  }
  LaplacianSample out;
  out.seed = raw.seed;
  out.law = EntryLaw::kBernoulliCentered;
  out.degenerate = spec.degenerate();
  double scale = 1.0 / spec.q;
  double shift = 0.0;
  if (!out.degenerate) {
    const double root = std::sqrt(1.0 - spec.p());
    scale = 1.0 / (spec.q * root);
    shift = spec.q / (spec.n * root);
  }
  out.h = raw.m * scale;
  out.h.array() -= shift;
  rebuild_diagonal(out.h);
  return out;
}

double raw_shift_constant(const EnsembleSpec& spec) {
  return spec.q * spec.q * (spec.n + 1.0) / spec.n;
}

Matrix reconstruct_raw(const LaplacianSample& h, const EnsembleSpec& spec) {
  if (h.degenerate) return spec.q * h.h;
  const int size = h.size();
  const double c = raw_shift_constant(spec);
  Matrix m = spec.q * std::sqrt(1.0 - spec.p()) * h.h;
  // q^2 (N+1)/N e e^T has entries q^2/N.
  m.array() += c / size;
  m.diagonal().array() -= c;
  return m;
}

LaplacianSample sample_laplacian_type(const EnsembleSpec& spec,
                                      std::uint64_t seed) {
  spec.validate();
  if (spec.entry_law == EntryLaw::kBernoulliCentered) {
    return center_and_rescale(sample_raw_laplacian(spec, seed), spec);
  }
  const int size = spec.n + 1;
  const double sd = 1.0 / std::sqrt(static_cast<double>(spec.n));
  LaplacianSample out;
  out.seed = seed;
  out.law = spec.entry_law;
  out.h = Matrix::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    CounterStream stream(seed, StreamTag::kOffDiagonal, static_cast<std::uint64_t>(i));
    for (int j = i + 1; j < size; ++j) {
      const double x = spec.entry_law == EntryLaw::kGaussian
                           ? sd * stream.normal()
                           : spec.custom->inverse_cdf(stream.uniform());
      out.h(i, j) = x;
      out.h(j, i) = x;
    }
  }
  rebuild_diagonal(out.h);
  return out;
}

Vector structural_diagonal(const EnsembleSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int size = spec.n + 1;
  Vector sums = Vector::Zero(size);
  auto accumulate_row = [&](int i, auto&& value_of) {
    for (int j = i + 1; j < size; ++j) {
      const double x = value_of(j);
      sums(i) += x;
      sums(j) += x;
    }
  };
  if (spec.entry_law == EntryLaw::kBernoulliCentered) {
    if (!(spec.q > 0.0)) throw InvalidArgument("rescaling needs q > 0");
    const bool degenerate = spec.degenerate();
    const double p = std::min(spec.p(), 1.0);
    double scale = 1.0 / spec.q;
    double shift = 0.0;
    if (!degenerate) {
      const double root = std::sqrt(1.0 - p);
      scale = 1.0 / (spec.q * root);
      shift = spec.q / (spec.n * root);
    }
    std::vector<char> edge(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
      std::fill(edge.begin(), edge.end(), 0);
      if (p < kDenseThreshold) {
        if (p > 0.0) {
          CounterStream stream(seed, StreamTag::kSparseRow, static_cast<std::uint64_t>(i));
          const double log_q = std::log1p(-p);
          double j = i;
          while (true) {
            j += std::floor(std::log(stream.uniform()) / log_q) + 1.0;
            if (j >= size) break;
            edge[static_cast<std::size_t>(j)] = 1;
          }
        }
      } else {
        CounterStream stream(seed, StreamTag::kOffDiagonal, static_cast<std::uint64_t>(i));
        for (int j = i + 1; j < size; ++j) edge[j] = stream.uniform() < p ? 1 : 0;
      }
      accumulate_row(i, [&](int j) { return (edge[j] ? 1.0 : 0.0) * scale - shift; });
    }
  } else {
    const double sd = 1.0 / std::sqrt(static_cast<double>(spec.n));
    for (int i = 0; i < size; ++i) {
      CounterStream stream(seed, StreamTag::kOffDiagonal, static_cast<std::uint64_t>(i));
      accumulate_row(i, [&](int) {
        return spec.entry_law == EntryLaw::kGaussian ? sd * stream.normal()
                                                     : spec.custom->inverse_cdf(stream.uniform());
      });
    }
  }
  return -sums;
}

Matrix sample_goe(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("GOE dimension must be >= 1");
  const double off_sd = 1.0 / std::sqrt(static_cast<double>(n));
  const double diag_sd = std::sqrt(2.0 / n);
  Matrix a(n, n);
  CounterStream diag(seed, StreamTag::kGoeDiagonal, 0);
  for (int i = 0; i < n; ++i) {
    a(i, i) = diag_sd * diag.normal();
    CounterStream row(seed, StreamTag::kGoeOffDiagonal, static_cast<std::uint64_t>(i));
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = off_sd * row.normal();
      a(j, i) = a(i, j);
    }
  }
  return a;
}

ProjectionBasis projection_basis(int n) {
  if (n < 1) throw InvalidArgument("projection basis needs n >= 1");
  const int size = n + 1;
  ProjectionBasis basis;
  Vector v = constant_unit_vector(size);
  v(n) -= 1.0;
  basis.u = v * (std::sqrt(2.0) / v.norm());
  basis.r = -basis.u.head(size) * basis.u.head(n).transpose();
  for (int j = 0; j < n; ++j) basis.r(j, j) += 1.0;
  basis.signs = Vector::Ones(n);
  for (int j = 0; j < n; ++j) {
    auto col = basis.r.col(j);
    const double tiny = 1e-15 * col.norm();
    for (int i = 0; i < size; ++i) {
      if (std::abs(col(i)) > tiny) {
        if (col(i) < 0.0) {
          col *= -1.0;
          basis.signs(j) = -1.0;
        }
        break;
      }
    }
  }
  return basis;
}

Matrix project_out_trivial(const Matrix& m, const ProjectionBasis& basis) {
  const int size = basis.rows();
  const int n = basis.cols();
  if (m.rows() != size || m.cols() != size) {
    throw DimensionMismatch("matrix size does not match projection basis");
  }
  const Vector& u = basis.u;
  const Vector y = m * u;
  const double uy = u.dot(y);
  Matrix out = m.topLeftCorner(n, n);
  const auto ut = u.head(n);
  const auto yt = y.head(n);
  out.noalias() -= ut * yt.transpose();
  out.noalias() -= yt * ut.transpose();
  out.noalias() += uy * ut * ut.transpose();
  const auto& s = basis.signs;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out(i, j) *= s(i) * s(j);
  }
  return out;
}

Matrix project_diagonal(const Vector& d, const ProjectionBasis& basis) {
  if (d.size() != basis.rows()) {
    throw DimensionMismatch("diagonal size does not match projection basis");
  }
  return project_out_trivial(Matrix(d.asDiagonal()), basis);
}

DecompositionParts sample_decomposition_parts(int n, std::uint64_t seed) {
  DecompositionParts parts;
  parts.goe = sample_goe(n, seed);
  const double d_sd = std::sqrt((n + 1.0) / n);
  parts.d.resize(n + 1);
  CounterStream d_stream(seed, StreamTag::kDiagonalD, 0);
  for (int i = 0; i <= n; ++i) parts.d(i) = d_sd * d_stream.normal();
  CounterStream g_stream(seed, StreamTag::kScalarG, 0);
  parts.g = g_stream.normal() / std::sqrt(static_cast<double>(n));
  return parts;
}

Matrix decompose_gaussian(int n, std::uint64_t seed,
                          const ProjectionBasis& basis) {
  const DecompositionParts parts = sample_decomposition_parts(n, seed);
  Matrix out = parts.goe + project_diagonal(parts.d, basis);
  out.diagonal().array() += parts.g;
  return out;
}

Matrix decompose_gaussian(int n, std::uint64_t seed) {
  return decompose_gaussian(n, seed, projection_basis(n));
}

double entry_covariance_oracle(int i, int j, int k, int l, int n) {
  const int size = n + 1;
  for (int idx : {i, j, k, l}) {
    if (idx < 0 || idx >= size) throw InvalidArgument("index out of range");
  }
  auto d2 = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  auto d3 = [](int a, int b, int c) { return (a == b && b == c) ? 1.0 : 0.0; };
  const double all = (i == j && j == k && k == l) ? 1.0 : 0.0;
  const double value = d2(i, k) * d2(j, l) + d2(i, l) * d2(j, k) - d3(i, j, k) -
                       d3(i, j, l) - d3(i, k, l) - d3(j, k, l) +
                       d2(i, j) * d2(k, l) + (n + 1.0) * all;
  return value / n;
}

double projected_covariance_oracle(int a, int b, int c, int d,
                                   const ProjectionBasis& basis) {
  const int n = basis.cols();
  auto d2 = [](int x, int y) { return x == y ? 1.0 : 0.0; };
  const Matrix& r = basis.r;
  double quartic = 0.0;
  for (int i = 0; i < basis.rows(); ++i) {
    quartic += r(i, a) * r(i, b) * r(i, c) * r(i, d);
  }
  return (d2(a, c) * d2(b, d) + d2(a, d) * d2(b, c) + d2(a, b) * d2(c, d)) / n +
         (n + 1.0) / n * quartic;
}

double bernoulli_entry_mean(const EnsembleSpec& spec) {
  if (spec.degenerate()) return 1.0 / spec.q;
  const double p = spec.p();
  const double root = std::sqrt(1.0 - p);
  return p / (spec.q * root) - spec.q / (spec.n * root);
}

double bernoulli_entry_variance(const EnsembleSpec& spec) {
  if (spec.degenerate()) return 0.0;
  const double p = spec.p();
  return p * (1.0 - p) / (spec.q * spec.q * (1.0 - p));
}

double bernoulli_entry_abs_moment(const EnsembleSpec& spec, int power) {
  if (spec.degenerate()) return std::pow(1.0 / spec.q, power);
  const double p = spec.p();
  const double root = std::sqrt(1.0 - p);
  const double high = root / spec.q;           // value on an edge
  const double low = p / (spec.q * root);      // |value| off an edge
  return p * std::pow(high, power) + (1.0 - p) * std::pow(low, power);
}

}  // namespace laprmt
