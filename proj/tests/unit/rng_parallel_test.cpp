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


#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <vector>

#include "laprmt/parallel.hpp"
#include "laprmt/report.hpp"
#include "laprmt/rng.hpp"

namespace laprmt {
namespace {

TEST(Rng, SameCoordinatesGiveSameStream) {
  CounterStream a(42, StreamTag::kOffDiagonal, 7);
  CounterStream b(42, StreamTag::kOffDiagonal, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, TagsIndicesAndSeedsSeparateStreams) {
  std::set<std::uint64_t> first;
  first.insert(CounterStream(1, StreamTag::kOffDiagonal, 0).next_u64());
  first.insert(CounterStream(1, StreamTag::kOffDiagonal, 1).next_u64());
  first.insert(CounterStream(1, StreamTag::kGoeDiagonal, 0).next_u64());
  first.insert(CounterStream(2, StreamTag::kOffDiagonal, 0).next_u64());
  first.insert(CounterStream(1ull << 40, StreamTag::kOffDiagonal, 0).next_u64());
  EXPECT_EQ(first.size(), 5u);
}

TEST(Rng, UniformIsOpenUnitInterval) {
  CounterStream s(3, StreamTag::kMisc, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, NormalMoments) {
  CounterStream s(5, StreamTag::kMisc, 1);
  const int n = 400000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal();
    m1 += x;
    m2 += x * x;
    m4 += x * x * x * x;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  EXPECT_NEAR(m1, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(m2, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m4, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(Rng, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) seen.insert(derive_seed(11, a, b));
  }
  EXPECT_EQ(seen.size(), 200u);
  EXPECT_EQ(derive_seed(11, 3, 1), derive_seed(11, 3, 1));
}

TEST(Parallel, MapIsIndependentOfThreadCount) {
  auto work = [](std::size_t i) {
    CounterStream s(9, StreamTag::kMisc, i);
    return s.normal();
  };
  const auto one = parallel_map<double>(257, 1, work);
  const auto many = parallel_map<double>(257, 8, work);
  EXPECT_EQ(one, many);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, ResolveThreadsHonoursExplicitCount) {
  EXPECT_EQ(resolve_threads(3), 3);
  EXPECT_GE(resolve_threads(0), 1);
}

TEST(Report, ChecksAndPassFlag) {
  VerificationReport r;
  r.check_le("a", 1.0, 2.0);
  r.check_ge("b", 3.0, 2.0);
  EXPECT_TRUE(r.passed());
  r.check_le("c", 3.0, 2.0);
  EXPECT_FALSE(r.passed());
  const Json j = r.to_json();
  EXPECT_EQ(j["checks"].size(), 3u);
  EXPECT_FALSE(j["passed"].get<bool>());
}

TEST(Report, NonFiniteValuesSerializeAsNull) {
  VerificationReport r;
  r.check("x", true, std::nan(""), INFINITY);
  const Json j = r.to_json();
  EXPECT_TRUE(j["checks"][0]["value"].is_null());
  EXPECT_TRUE(j["checks"][0]["bound"].is_null());
}

TEST(Report, Statistics) {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  EXPECT_DOUBLE_EQ(mean(v), 2.5);
  EXPECT_DOUBLE_EQ(median(v), 2.5);
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(sample_variance(v), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(max_of(v), 4.0);
  EXPECT_DOUBLE_EQ(min_of(v), 1.0);
  EXPECT_TRUE(std::isnan(mean({})));
}

}  // namespace
}  // namespace laprmt
