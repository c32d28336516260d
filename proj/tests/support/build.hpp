#pragma once

#include <initializer_list>
#include <utility>

#include "kanon/graph.hpp"

namespace kanon::testing {

inline Graph make_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// K_k on 0..k-1 plus a separate edge between k and k+1.
inline Graph clique_plus_edge(std::size_t k) {
  Graph g(k + 2);
  for (Vertex u = 0; u < k; ++u)
    for (Vertex v = u + 1; v < k; ++v) g.add_edge(u, v);
  g.add_edge(static_cast<Vertex>(k), static_cast<Vertex>(k + 1));
  return g;
}

}  // namespace kanon::testing
