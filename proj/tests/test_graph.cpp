#include <doctest.h>

#include <random>

#include "aoi/error.hpp"
#include "aoi/graph.hpp"
#include "support.hpp"

using namespace aoi;

namespace {

Errc error_of(int n, std::vector<Edge> edges) {
  try {
    build_graph(n, edges);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidGraph;
}

}  // namespace

TEST_CASE("build_graph accepts valid graphs") {
  const Graph g = test::ref_graph();
  CHECK(g.node_count() == 8);
  CHECK(g.edges().size() == 7);
  CHECK(g.has_edge(3, 1));
  CHECK_FALSE(g.has_edge(3, 0));
  const std::vector<Edge> single = {{0, 1}};
  CHECK(build_graph(2, single).node_count() == 2);
}

TEST_CASE("build_graph rejects invalid graphs") {
  CHECK(error_of(3, {{0, 1}}) == Errc::DisconnectedGraph);
  CHECK(error_of(3, {{0, 1}, {1, 1}, {1, 2}}) == Errc::SelfLoop);
  CHECK(error_of(3, {{0, 1}, {1, 0}, {1, 2}}) == Errc::DuplicateEdge);
  CHECK(error_of(3, {{0, 1}, {1, 3}}) == Errc::IndexOutOfRange);
  CHECK(error_of(3, {{0, 1}, {-1, 2}}) == Errc::IndexOutOfRange);
  CHECK(error_of(1, {}) == Errc::InvalidGraph);
}

TEST_CASE("bfs_distances examples") {
  CHECK(bfs_distances(test::ref_graph()).dist == std::vector<int>{0, 1, 1, 2, 2, 1, 2, 3});
  const std::vector<Edge> single = {{0, 1}};
  CHECK(bfs_distances(build_graph(2, single)).dist == std::vector<int>{0, 1});
  const std::vector<Edge> star = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  CHECK(bfs_distances(build_graph(5, star)).dist == std::vector<int>{0, 1, 1, 1, 1});
  CHECK(bfs_distances(test::ref_graph()).max() == 3);
}

TEST_CASE("shortest_path_tree examples") {
  const auto t = shortest_path_tree(test::ref_graph());
  CHECK(t.parent == std::vector<NodeId>{-1, 0, 0, 1, 2, 0, 5, 6});
  CHECK(t.children(0) == std::vector<NodeId>{1, 2, 5});
  CHECK(t.max_depth() == 3);

  const std::vector<Edge> single = {{0, 1}};
  CHECK(shortest_path_tree(build_graph(2, single)).parent == std::vector<NodeId>{-1, 0});

  const std::vector<Edge> cycle = {{0, 1}, {1, 2}, {2, 0}};
  CHECK(shortest_path_tree(build_graph(3, cycle)).parent == std::vector<NodeId>{-1, 0, 0});
}

TEST_CASE("shortest_path_tree breaks ties towards the lowest id") {
  // 3 is two hops away through either 1 or 2.
  const std::vector<Edge> diamond = {{0, 2}, {0, 1}, {2, 3}, {1, 3}};
  CHECK(shortest_path_tree(build_graph(4, diamond)).parent[3] == 1);
}

TEST_CASE("property: random connected graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 12)(rng);
    const int extra = std::uniform_int_distribution<int>(0, n)(rng);
    const auto edges = test::random_connected_edges(n, extra, rng);
    const Graph g = build_graph(n, edges);
    const auto d = bfs_distances(g);
    const auto t = shortest_path_tree(g);
    CAPTURE(trial);

    REQUIRE(d.dist == test::oracle_distances(n, edges));
    CHECK(d[0] == 0);
    for (auto [a, b] : edges) CHECK(std::abs(d[a] - d[b]) <= 1);

    CHECK(t.parent[0] == -1);
    CHECK(t.depth == d.dist);
    for (NodeId v = 1; v < n; ++v) {
      CHECK(g.has_edge(v, t.parent[v]));
      CHECK(t.depth[v] == t.depth[t.parent[v]] + 1);
      // Parent pointers reach the base in exactly depth[v] steps.
      NodeId u = v;
      int steps = 0;
      while (u != kBase && steps <= n) {
        u = t.parent[u];
        ++steps;
      }
      CHECK(u == kBase);
      CHECK(steps == t.depth[v]);
    }
  }
}
