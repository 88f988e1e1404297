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

#include "laprmt/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>

#include "laprmt/error.hpp"

namespace laprmt {
namespace {

constexpr std::array<char, 7> kMagic{'L', 'A', 'P', 'R', 'M', 'T', '1'};
// Refuse absurd sizes before allocating.
constexpr std::uint64_t kMaxSize = 1u << 16;

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    bytes[b] = static_cast<char>((value >> (8 * b)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw FormatError("truncated container");
  T value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    value |= static_cast<T>(bytes[b]) << (8 * b);
  }
  return value;
}

void put_f64(std::ostream& out, double x) {
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(x));
}

double get_f64(std::istream& in) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in));
}

void write_header(std::ostream& out, const ContainerHeader& h) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(h.kind));
  put_le<std::uint64_t>(out, h.size);
  put_le<std::uint64_t>(out, h.seed);
  put_le<std::uint32_t>(out, h.law_tag);
  put_le<std::uint32_t>(out, h.flags);
}

void expect_kind(const ContainerHeader& h, PayloadKind kind) {
  if (h.kind != kind) throw FormatError("unexpected payload kind");
}

void check_stream(std::ostream& out) {
  if (!out) throw Error("failed writing container");
}

}  // namespace

ContainerHeader read_header(std::istream& in) {
  std::array<char, 7> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError("bad magic, not a LAPRMT1 container");
  ContainerHeader h;
  const auto kind = get_le<std::uint8_t>(in);
  if (kind > 2) throw FormatError("unknown payload kind");
  h.kind = static_cast<PayloadKind>(kind);
  h.size = get_le<std::uint64_t>(in);
  h.seed = get_le<std::uint64_t>(in);
  h.law_tag = get_le<std::uint32_t>(in);
  h.flags = get_le<std::uint32_t>(in);
  if (h.size == 0 || h.size > kMaxSize) throw FormatError("matrix size out of range");
  return h;
}

void write_laplacian(std::ostream& out, const LaplacianSample& sample) {
  ContainerHeader h;
  h.kind = PayloadKind::kLaplacianOffdiag;
  h.size = static_cast<std::uint64_t>(sample.size());
  h.seed = sample.seed;
  h.law_tag = static_cast<std::uint32_t>(sample.law);
  h.flags = sample.degenerate ? kFlagDegenerate : 0u;
  write_header(out, h);
  for (int i = 1; i < sample.size(); ++i) {
    for (int j = 0; j < i; ++j) put_f64(out, sample.h(i, j));
  }
  check_stream(out);
}

LaplacianSample read_laplacian(std::istream& in) {
  const ContainerHeader h = read_header(in);
  expect_kind(h, PayloadKind::kLaplacianOffdiag);
  if (h.law_tag > 2) throw FormatError("unknown entry-law tag");
  const auto size = static_cast<Eigen::Index>(h.size);
  LaplacianSample sample;
  sample.seed = h.seed;
  sample.law = static_cast<EntryLaw>(h.law_tag);
  sample.degenerate = (h.flags & kFlagDegenerate) != 0;
  sample.h = Matrix::Zero(size, size);
  for (Eigen::Index i = 1; i < size; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      sample.h(i, j) = sample.h(j, i) = get_f64(in);
    }
  }
  rebuild_diagonal(sample.h);
  return sample;
}

void write_symmetric(std::ostream& out, const Matrix& m, std::uint64_t seed) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix is not square");
  ContainerHeader h;
  h.kind = PayloadKind::kSymmetricLower;
  h.size = static_cast<std::uint64_t>(m.rows());
  h.seed = seed;
  write_header(out, h);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) put_f64(out, m(i, j));
  }
  check_stream(out);
}

Matrix read_symmetric(std::istream& in, ContainerHeader* header) {
  const ContainerHeader h = read_header(in);
  expect_kind(h, PayloadKind::kSymmetricLower);
  if (header) *header = h;
  const auto size = static_cast<Eigen::Index>(h.size);
  Matrix m(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = get_f64(in);
  }
  return m;
}

void write_eigenvectors(std::ostream& out, const Matrix& vectors,
                        std::uint64_t seed) {
  ContainerHeader h;
  h.kind = PayloadKind::kEigenvectors;
  h.size = static_cast<std::uint64_t>(vectors.rows());
  h.seed = seed;
  write_header(out, h);
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(vectors.cols()));
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) put_f64(out, vectors(i, j));
  }
  check_stream(out);
}

Matrix read_eigenvectors(std::istream& in, ContainerHeader* header) {
  const ContainerHeader h = read_header(in);
  expect_kind(h, PayloadKind::kEigenvectors);
  if (header) *header = h;
  const auto cols = get_le<std::uint64_t>(in);
  if (cols == 0 || cols > h.size) throw FormatError("column count out of range");
  const auto rows = static_cast<Eigen::Index>(h.size);
  Matrix m(rows, static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = get_f64(in);
  }
  return m;
}

void save_laplacian(const std::string& path, const LaplacianSample& sample) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_laplacian(out, sample);
}

LaplacianSample load_laplacian(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read_laplacian(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const Vector& eigenvalues) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    out << i << ',' << eigenvalues(i) << '\n';
  }
}

}  // namespace laprmt
