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


#ifndef LAPRMT_TESTS_SUPPORT_HPP_
#define LAPRMT_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "laprmt/laprmt.hpp"

namespace laprmt::testing {

inline std::vector<double> sorted(const Vector& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

// Offdiagonal upper entries of a matrix as a flat list.
inline std::vector<double> upper_entries(const Matrix& m) {
  std::vector<double> out;
  for (Eigen::Index j = 1; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) out.push_back(m(i, j));
  }
  return out;
}

}  // namespace laprmt::testing

#endif  // LAPRMT_TESTS_SUPPORT_HPP_
