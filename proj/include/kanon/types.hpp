#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace kanon {

using Vertex = std::uint32_t;

// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

}  // namespace kanon
