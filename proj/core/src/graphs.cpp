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

#include "laprmt/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "laprmt/error.hpp"
#include "laprmt/rng.hpp"

namespace laprmt {

void ColoredGraph::validate() const {
  if (black_count < 0) throw InvalidArgument("negative black vertex count");
  if (white_indices.size() > 2) throw InvalidArgument("at most two white vertices");
  const int v = vertex_count();
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= v || b >= v) throw InvalidArgument("edge endpoint out of range");
  }
}

void Partition::validate(int m) const {
  std::vector<int> seen(static_cast<std::size_t>(m), 0);
  for (const auto& block : blocks) {
    if (block.empty()) throw InvalidArgument("empty partition block");
    for (int x : block) {
      if (x < 0 || x >= m) throw InvalidArgument("partition label out of range");
      if (seen[x]++) throw InvalidArgument("partition blocks overlap");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InvalidArgument("partition does not cover all black vertices");
  }
}

Partition singleton_partition(int m) {
  Partition p;
  for (int i = 0; i < m; ++i) p.blocks.push_back({i});
  return p;
}

ColoredGraph quotient_graph(const ColoredGraph& g, const Partition& p) {
  g.validate();
  p.validate(g.black_count);
  std::vector<std::vector<int>> blocks = p.blocks;
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  const int q = static_cast<int>(blocks.size());
  std::vector<int> phi(static_cast<std::size_t>(g.vertex_count()));
  for (int b = 0; b < q; ++b) {
    for (int x : blocks[b]) phi[x] = b;
  }
  for (int w = 0; w < static_cast<int>(g.white_indices.size()); ++w) {
    phi[g.black_count + w] = q + w;
  }
  ColoredGraph out;
  out.black_count = q;
  out.white_indices = g.white_indices;
  for (const auto& [a, b] : g.edges) out.edges.emplace_back(phi[a], phi[b]);
  return out;
}

namespace {

std::vector<int> component_labels(const ColoredGraph& g, int& count) {
  const int v = g.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(v));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [a, b] : g.edges) parent[find(a)] = find(b);
  std::vector<int> label(static_cast<std::size_t>(v), -1), root_label(static_cast<std::size_t>(v), -1);
  count = 0;
  for (int x = 0; x < v; ++x) {
    const int r = find(x);
    if (root_label[r] < 0) root_label[r] = count++;
    label[x] = root_label[r];
  }
  return label;
}

}  // namespace

bool is_connected(const ColoredGraph& g) {
  g.validate();
  if (g.vertex_count() <= 1) return true;
  int count = 0;
  component_labels(g, count);
  return count == 1;
}

std::vector<ColoredGraph> connected_components(const ColoredGraph& g) {
  g.validate();
  int count = 0;
  const std::vector<int> label = component_labels(g, count);
  std::vector<ColoredGraph> out(static_cast<std::size_t>(count));
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()));
  for (int x = 0; x < g.black_count; ++x) local[x] = out[label[x]].black_count++;
  std::vector<int> white_local(static_cast<std::size_t>(g.vertex_count()));
  for (int w = 0; w < static_cast<int>(g.white_indices.size()); ++w) {
    auto& comp = out[label[g.black_count + w]];
    white_local[g.black_count + w] = static_cast<int>(comp.white_indices.size());
    comp.white_indices.push_back(g.white_indices[w]);
  }
  auto map = [&](int x) {
    const auto& comp = out[label[x]];
    return g.is_white(x) ? comp.black_count + white_local[x] : local[x];
  };
  for (const auto& [a, b] : g.edges) out[label[a]].edges.emplace_back(map(a), map(b));
  return out;
}

double graph_sum_value(const ColoredGraph& g, const CMatrix& gt, int k, int cap) {
  g.validate();
  const int m = g.black_count;
  if (m > cap) {
    throw TooLarge("graph sum with " + std::to_string(m) + " black vertices exceeds cap " +
                   std::to_string(cap));
  }
  const int n = static_cast<int>(gt.rows());
  const Matrix a = gt.cwiseAbs();
  // Matrix index of each white vertex in the minor's ordering.
  std::vector<int> white(g.white_indices.size());
  for (std::size_t w = 0; w < white.size(); ++w) {
    const int idx = g.white_indices[w];
    if (idx == k || idx < 0 || idx > n) throw InvalidArgument("white index invalid for minor k");
    white[w] = idx < k ? idx : idx - 1;
  }
  // Edges are attached to the later black endpoint; edges among white
  // vertices form a constant factor.
  double constant = 1.0;
  std::vector<std::vector<std::pair<int, int>>> attached(static_cast<std::size_t>(m));
  for (auto [u, v] : g.edges) {
    const bool wu = g.is_white(u), wv = g.is_white(v);
    if (wu && wv) {
      constant *= a(white[u - m], white[v - m]);
      continue;
    }
    if (wu) std::swap(u, v);
    if (!g.is_white(v) && v > u) std::swap(u, v);
    // u is black, v is an earlier black vertex, itself, or white.
    attached[u].emplace_back(u, v);
  }
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  std::function<double(int)> rec = [&](int depth) -> double {
    if (depth == m) return 1.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      idx[depth] = i;
      double f = 1.0;
      for (const auto& [u, v] : attached[depth]) {
        const int j = g.is_white(v) ? white[v - m] : idx[v];
        f *= a(i, j);
      }
      if (f != 0.0) total += f * rec(depth + 1);
    }
    return total;
  };
  return constant * rec(0) / std::pow(static_cast<double>(n), m);
}

double graph_sum_bound(const ColoredGraph& g, int n, double eta, double c_star) {
  const double c = std::max(2.0 / c_star, 1.0);
  const double ne = n * eta;
  double bound = 1.0;
  for (const auto& comp : connected_components(g)) {
    const double exponent = comp.white_indices.empty() ? (comp.black_count - 1) / 2.0
                                                       : comp.black_count / 2.0;
    bound *= std::pow(c, comp.edge_count()) * std::pow(ne, -exponent);
  }
  return bound;
}

ColoredGraph random_connected_graph(std::uint64_t seed, std::uint64_t index, int max_black,
                                    int max_edges, int matrix_size, int excluded_index) {
  CounterStream rng(seed, StreamTag::kGraph, index);
  auto pick = [&rng](int lo, int hi) {  // uniform in [lo, hi]
    return lo + static_cast<int>(rng.uniform() * (hi - lo + 1));
  };
  ColoredGraph g;
  g.black_count = pick(1, max_black);
  // Spanning tree needs vertex_count - 1 <= max_edges.
  const int max_white = std::clamp(max_edges + 1 - g.black_count, 0, 2);
  const int whites = pick(0, max_white);
  for (int w = 0; w < whites; ++w) {
    int idx = pick(0, matrix_size - 2);
    if (idx >= excluded_index) ++idx;
    g.white_indices.push_back(idx);
  }
  const int v = g.vertex_count();
  for (int x = 1; x < v; ++x) g.edges.emplace_back(pick(0, x - 1), x);
  const int target = pick(std::max(v - 1, 0), max_edges);
  while (g.edge_count() < target) g.edges.emplace_back(pick(0, v - 1), pick(0, v - 1));
  return g;
}

}  // namespace laprmt
