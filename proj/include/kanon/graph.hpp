#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kanon/errors.hpp"
#include "kanon/types.hpp"

namespace kanon {

// Simple undirected graph over dense vertex ids [0, vertex_count).
//
// Adjacency is kept as per-vertex sorted neighbor lists, so membership tests
// are logarithmic and common-neighbor counts are a linear merge.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count) : adj_(vertex_count) {}

  // Throws SelfLoop / DuplicateEdge / VertexOutOfRange on bad input.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool has_edge(Vertex u, Vertex v) const;

  // In-place insertion; requires exclusive access.
  void add_edge(Vertex u, Vertex v);
  void add_edge(Edge e) { add_edge(e.u, e.v); }

  // Value-semantic insertion: returns a copy with one more edge.
  Graph with_edge(Vertex u, Vertex v) const;
  Graph with_edges(std::span<const Edge> edges) const;

  // All edges, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void check_vertex(Vertex v) const;

  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

// |N(u) ∩ N(v)|. Throws SameVertex when u == v.
std::size_t common_neighbor_count(const Graph& g, Vertex u, Vertex v);

// Vertices reachable from v by a walk of length exactly two, v excluded.
VertexSet two_neighborhood(const Graph& g, Vertex v);

// Every pair {u, v} of the given vertex set that is not an edge of g.
std::vector<Edge> non_edges_within(const Graph& g, std::span<const Vertex> vertices);

// True when every edge of `sub` is an edge of `super` (equal vertex counts).
bool is_edge_subset(const Graph& sub, const Graph& super);

// Edges of `super` that are missing from `sub`, sorted.
std::vector<Edge> edge_difference(const Graph& super, const Graph& sub);

// Connected component id per vertex, ids assigned in order of lowest member.
std::vector<std::size_t> component_ids(const Graph& g);

// Common shapes, used by tests, generators and the CLI.
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);

}  // namespace kanon
