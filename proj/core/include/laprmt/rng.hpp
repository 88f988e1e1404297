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

#ifndef LAPRMT_RNG_HPP_
#define LAPRMT_RNG_HPP_

#include <array>
#include <cstdint>

namespace laprmt {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
// the output block is a pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  static Counter block(Counter counter, Key key) noexcept;
};

// Purpose tags keep the random streams of different matrix components
// disjoint for a shared seed.
enum class StreamTag : std::uint32_t {
  kOffDiagonal = 1,
  kSparseRow = 2,
  kGoeOffDiagonal = 3,
  kGoeDiagonal = 4,
  kDiagonalD = 5,
  kScalarG = 6,
  kDerivedSeed = 7,
  kPathNoise = 8,
  kGraph = 9,
  kMisc = 10,
};

// A sequential stream addressed by (seed, tag, index). Every matrix entry or
// row owns its own stream, so samples do not depend on evaluation order.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, StreamTag tag, std::uint64_t index) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;
  // Standard normal via Box-Muller; the second variate is cached.
  double normal() noexcept;

 private:
  void refill() noexcept;

  Philox4x32::Key key_;
  Philox4x32::Counter counter_;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Child seed for (seed, a, b), e.g. the seed of trial `a` of an experiment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b = 0) noexcept;

}  // namespace laprmt

#endif  // LAPRMT_RNG_HPP_
