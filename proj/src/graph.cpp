#include "aoi/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "aoi/error.hpp"

namespace aoi {

namespace {

std::string edge_str(const Edge& e) {
  return std::to_string(e.first) + "-" + std::to_string(e.second);
}

}  // namespace

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u < 0 || u >= node_count() || v < 0 || v >= node_count()) return false;
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

int DistanceMap::max() const {
  return dist.empty() ? 0 : *std::max_element(dist.begin(), dist.end());
}

std::vector<NodeId> ShortestPathTree::children(NodeId v) const {
  std::vector<NodeId> out;
  for (NodeId c = 0; c < node_count(); ++c) {
    if (parent[c] == v) out.push_back(c);
  }
  return out;
}

int ShortestPathTree::max_depth() const {
  return depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
}

Graph build_graph(int node_count, std::span<const Edge> edges) {
  if (node_count < 2) {
    throw Error(Errc::InvalidGraph, "need at least 2 nodes, got " + std::to_string(node_count));
  }
  Graph g;
  g.adjacency_.assign(node_count, {});
  std::set<Edge> seen;
  for (const auto& e : edges) {
    auto [u, v] = e;
    if (u < 0 || u >= node_count || v < 0 || v >= node_count) {
      throw Error(Errc::IndexOutOfRange, "edge " + edge_str(e) + " outside 0.." +
                                             std::to_string(node_count - 1));
    }
    if (u == v) throw Error(Errc::SelfLoop, "edge " + edge_str(e));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw Error(Errc::DuplicateEdge, "edge " + edge_str(e));
    }
    g.edges_.push_back(e);
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());

  const auto dist = bfs_distances(g);
  for (NodeId v = 0; v < node_count; ++v) {
    if (dist.dist[v] < 0) {
      throw Error(Errc::DisconnectedGraph, "node " + std::to_string(v) + " unreachable from base");
    }
  }
  return g;
}

DistanceMap bfs_distances(const Graph& g) {
  DistanceMap out;
  out.dist.assign(g.node_count(), -1);
  std::queue<NodeId> frontier;
  out.dist[g.base()] = 0;
  frontier.push(g.base());
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : g.neighbors(u)) {
      if (out.dist[v] < 0) {
        out.dist[v] = out.dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return out;
}

ShortestPathTree shortest_path_tree(const Graph& g) {
  const auto dist = bfs_distances(g);
  ShortestPathTree t;
  t.parent.assign(g.node_count(), -1);
  t.depth = dist.dist;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == g.base()) continue;
    // Neighbours are sorted, so the first hit is the lowest eligible id.
    for (NodeId u : g.neighbors(v)) {
      if (dist.dist[u] == dist.dist[v] - 1) {
        t.parent[v] = u;
        break;
      }
    }
  }
  return t;
}

}  // namespace aoi
