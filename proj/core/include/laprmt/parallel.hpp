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

#ifndef LAPRMT_PARALLEL_HPP_
#define LAPRMT_PARALLEL_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace laprmt {

// Number of worker threads: explicit value if > 0, else LAPRMT_THREADS,
// else hardware concurrency.
int resolve_threads(int requested);

// Runs body(i) for i in [0, count) on `threads` workers. Indices are handed
// out dynamically; the first exception thrown by any task is rethrown.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

// Results are stored by index so downstream reductions can run in index
// order and stay independent of the thread count.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, int threads, F&& fn) {
  std::vector<T> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace laprmt

#endif  // LAPRMT_PARALLEL_HPP_
