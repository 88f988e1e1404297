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

#ifndef LAPRMT_GRAPHS_HPP_
#define LAPRMT_GRAPHS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "laprmt/spectra.hpp"

namespace laprmt {

// Black vertices are 0..m-1; white vertex w has id m + w and carries a fixed
// matrix index white_indices[w] (0-based, into the full (N+1)-dimensional H).
struct ColoredGraph {
  int black_count = 0;
  std::vector<int> white_indices;
  std::vector<std::pair<int, int>> edges;  // multiset, self-loops allowed

  int vertex_count() const { return black_count + static_cast<int>(white_indices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  bool is_white(int v) const { return v >= black_count; }
  void validate() const;
};

// Blocks over the black labels 0..m-1.
struct Partition {
  std::vector<std::vector<int>> blocks;
  void validate(int m) const;
};

// One black vertex per block, blocks ordered by their smallest label; edges
// mapped through the block map with multiplicity, whites unchanged.
ColoredGraph quotient_graph(const ColoredGraph& g, const Partition& p);
Partition singleton_partition(int m);

bool is_connected(const ColoredGraph& g);
std::vector<ColoredGraph> connected_components(const ColoredGraph& g);

inline constexpr int kGraphSumCap = 5;

// V(G, k) = N^{-m} sum_{i_1..i_m != k} prod_{(a,b)} |Gt_{i_a i_b}|, with gt the
// N x N resolvent of the vertex-deleted Laplacian (indices in minor order).
// Brute force, N^m terms; throws TooLarge when m exceeds the cap.
double graph_sum_value(const ColoredGraph& g, const CMatrix& gt, int k,
                       int cap = kGraphSumCap);

// C^E (N eta)^{-(m-1)/2} without white vertices, C^E (N eta)^{-m/2} with,
// C = max(2/c_*, 1); multiplied over connected components.
double graph_sum_bound(const ColoredGraph& g, int n, double eta, double c_star);

// Random connected graph with 1..max_black black vertices, 0..2 white
// vertices and at most max_edges edges.
ColoredGraph random_connected_graph(std::uint64_t seed, std::uint64_t index, int max_black,
                                    int max_edges, int matrix_size, int excluded_index);

}  // namespace laprmt

#endif  // LAPRMT_GRAPHS_HPP_
