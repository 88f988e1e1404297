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

#ifndef LAPRMT_MATRIX_IO_HPP_
#define LAPRMT_MATRIX_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "laprmt/ensemble.hpp"

namespace laprmt {

enum class PayloadKind : std::uint8_t {
  kLaplacianOffdiag = 0,  // strict lower triangle of a Laplacian sample
  kSymmetricLower = 1,    // lower triangle including the diagonal
  kEigenvectors = 2,      // u64 column count, then the full matrix
};

inline constexpr std::uint32_t kNoLawTag = 0xFFFFFFFFu;
inline constexpr std::uint32_t kFlagDegenerate = 1u;

struct ContainerHeader {
  PayloadKind kind = PayloadKind::kSymmetricLower;
  std::uint64_t size = 0;
  std::uint64_t seed = 0;
  std::uint32_t law_tag = kNoLawTag;
  std::uint32_t flags = 0;
};

// Little-endian binary container, see docs/formats.md.
void write_laplacian(std::ostream& out, const LaplacianSample& sample);
LaplacianSample read_laplacian(std::istream& in);
void write_symmetric(std::ostream& out, const Matrix& m, std::uint64_t seed);
Matrix read_symmetric(std::istream& in, ContainerHeader* header = nullptr);
void write_eigenvectors(std::ostream& out, const Matrix& vectors,
                        std::uint64_t seed);
Matrix read_eigenvectors(std::istream& in, ContainerHeader* header = nullptr);
ContainerHeader read_header(std::istream& in);

void save_laplacian(const std::string& path, const LaplacianSample& sample);
LaplacianSample load_laplacian(const std::string& path);

// CSV with '.' decimals and 17 significant digits.
void write_matrix_csv(std::ostream& out, const Matrix& m);
void write_spectrum_csv(std::ostream& out, const Vector& eigenvalues);

}  // namespace laprmt

#endif  // LAPRMT_MATRIX_IO_HPP_
