#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "aoi/graph.hpp"

namespace aoi::test {

inline const std::vector<Edge> kRefEdges = {{0, 1}, {1, 3}, {0, 2}, {2, 4}, {0, 5}, {5, 6}, {6, 7}};
inline const std::vector<double> kRefAlphas = {4, 6, 3, 9, 6, 8, 7};

inline Graph ref_graph() { return build_graph(8, kRefEdges); }

// Random spanning tree (each node attaches to an earlier one) plus `extra`
// random chords.
inline std::vector<Edge> random_connected_edges(int n, int extra, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.emplace_back(pick(rng), v);
  }
  std::uniform_int_distribution<int> node(0, n - 1);
  for (int tries = 0; tries < 4 * extra && extra > 0; ++tries) {
    int a = node(rng), b = node(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (std::find(edges.begin(), edges.end(), Edge{a, b}) != edges.end()) continue;
    edges.emplace_back(a, b);
    --extra;
  }
  return edges;
}

// All-pairs shortest paths by Floyd-Warshall; returns distances to node 0.
inline std::vector<int> oracle_distances(int n, const std::vector<Edge>& edges) {
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b] : edges) d[a][b] = d[b][a] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = d[i][0];
  return out;
}

// Calls f(subset) for every size-k subset of 0..n-1, in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace aoi::test
