#include <doctest.h>

#include <algorithm>

#include "kanon/errors.hpp"
#include "kanon/graph.hpp"
#include "kanon/hardgen.hpp"
#include "support/build.hpp"

using namespace kanon;
using testing::make_graph;

TEST_SUITE("graph") {

TEST_CASE("add_edge") {
  Graph g(3);
  g.add_edge(0, 1);
  CHECK(g.edges() == std::vector<Edge>{Edge(0, 1)});
  CHECK(g.has_edge(1, 0));

  Graph tri = complete_graph(3);
  CHECK_THROWS_AS(tri.add_edge(0, 1), Error);
  try {
    tri.add_edge(1, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DuplicateEdge);
  }
  try {
    tri.add_edge(2, 2);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SelfLoop);
  }
  CHECK_THROWS_AS(tri.add_edge(0, 7), Error);

  Graph p = path_graph(3).with_edge(0, 2);
  CHECK(p == complete_graph(3));
}

TEST_CASE("with_edges leaves the input alone") {
  const Graph p = path_graph(4);
  const std::vector<Edge> extra{Edge(0, 3)};
  Graph c = p.with_edges(extra);
  CHECK(c == cycle_graph(4));
  CHECK(p.edge_count() == 3);
}

TEST_CASE("common_neighbor_count") {
  CHECK(common_neighbor_count(complete_graph(3), 0, 1) == 1);
  const Graph k5 = complete_graph(5);
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = 0; v < 5; ++v)
      if (u != v) CHECK(common_neighbor_count(k5, u, v) == 3);
  const Graph p = path_graph(3);
  CHECK(common_neighbor_count(p, 0, 2) == 1);
  CHECK(common_neighbor_count(p, 0, 1) == 0);
  try {
    common_neighbor_count(p, 1, 1);
    FAIL("expected SameVertex");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SameVertex);
  }
}

TEST_CASE("two_neighborhood") {
  CHECK(two_neighborhood(path_graph(3), 0) == VertexSet{2});
  CHECK(two_neighborhood(complete_graph(3), 0) == VertexSet{1, 2});
  CHECK(two_neighborhood(star_graph(3), 0).empty());
}

TEST_CASE("non_edges_within") {
  const VertexSet all3{0, 1, 2};
  CHECK(non_edges_within(complete_graph(3), all3).empty());
  CHECK(non_edges_within(Graph(3), all3).size() == 3);
  const VertexSet all4{0, 1, 2, 3};
  CHECK(non_edges_within(path_graph(4), all4) ==
        std::vector<Edge>{Edge(0, 2), Edge(0, 3), Edge(1, 3)});
}

TEST_CASE("neighborhood properties on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(12, 0.3, seed);
    const std::size_t n = g.vertex_count();
    for (Vertex u = 0; u < n; ++u) {
      const VertexSet two = two_neighborhood(g, u);
      CHECK_FALSE(std::binary_search(two.begin(), two.end(), u));
      for (Vertex v = 0; v < n; ++v) {
        if (u == v) continue;
        CHECK(common_neighbor_count(g, u, v) == common_neighbor_count(g, v, u));
        CHECK(std::binary_search(two.begin(), two.end(), v) == (common_neighbor_count(g, u, v) > 0));
      }
    }
    // An added edge (a,b) raises the count of (x,b) by one for each neighbor x of a.
    const VertexSet all = [&] {
      VertexSet s(n);
      for (Vertex v = 0; v < n; ++v) s[v] = v;
      return s;
    }();
    const auto missing = non_edges_within(g, all);
    CHECK(missing.size() + g.edge_count() == n * (n - 1) / 2);
    if (missing.empty()) continue;
    const Edge e = missing[seed % missing.size()];
    const Graph h = g.with_edge(e.u, e.v);
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = x + 1; y < n; ++y) {
        const std::size_t before = common_neighbor_count(g, x, y);
        const std::size_t after = common_neighbor_count(h, x, y);
        std::size_t expect = before;
        if (y == e.v && g.has_edge(x, e.u)) ++expect;
        if (x == e.v && g.has_edge(y, e.u)) ++expect;
        if (y == e.u && g.has_edge(x, e.v)) ++expect;
        if (x == e.u && g.has_edge(y, e.v)) ++expect;
        CHECK(after == expect);
      }
    }
  }
}

TEST_CASE("components and subsets") {
  const Graph g = make_graph(5, {{0, 1}, {3, 4}});
  CHECK(component_ids(g) == std::vector<std::size_t>{0, 0, 1, 2, 2});
  CHECK(is_edge_subset(g, g.with_edge(1, 2)));
  CHECK_FALSE(is_edge_subset(g.with_edge(1, 2), g));
  CHECK(edge_difference(g.with_edge(1, 2), g) == std::vector<Edge>{Edge(1, 2)});
}

}
