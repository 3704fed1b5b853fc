#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace aoi {

using NodeId = int;
using Slot = std::int64_t;

inline constexpr NodeId kBase = 0;

using Edge = std::pair<NodeId, NodeId>;

// Connected, undirected, unweighted graph with dense node ids and the base
// pinned at node 0. Instances are only produced by build_graph.
class Graph {
 public:
  int node_count() const noexcept { return static_cast<int>(adjacency_.size()); }
  NodeId base() const noexcept { return kBase; }

  // Edges in insertion order, as given to build_graph.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  // Neighbours sorted by ascending id.
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }

  bool has_edge(NodeId u, NodeId v) const;

 private:
  friend Graph build_graph(int node_count, std::span<const Edge> edges);

  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

// Hop count from every node to the base.
struct DistanceMap {
  std::vector<int> dist;

  int operator[](NodeId v) const { return dist.at(v); }
  int max() const;
};

// Shortest-path tree rooted at the base. parent[kBase] is -1.
struct ShortestPathTree {
  std::vector<NodeId> parent;
  std::vector<int> depth;

  int node_count() const noexcept { return static_cast<int>(parent.size()); }

  // Children of v in ascending id order.
  std::vector<NodeId> children(NodeId v) const;

  int max_depth() const;
};

// Throws Error{InvalidGraph, IndexOutOfRange, SelfLoop, DuplicateEdge,
// DisconnectedGraph}.
Graph build_graph(int node_count, std::span<const Edge> edges);

DistanceMap bfs_distances(const Graph& g);

// Each non-base node's parent is its lowest-id neighbour one hop closer to the
// base.
ShortestPathTree shortest_path_tree(const Graph& g);

}  // namespace aoi
