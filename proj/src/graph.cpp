#include "kanon/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace kanon {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::SameVertex: return "SameVertex";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::NotSuperset: return "NotSuperset";
    case Errc::TooSmall: return "TooSmall";
    case Errc::IsolatedVertex: return "IsolatedVertex";
    case Errc::DegreeTooLow: return "DegreeTooLow";
    case Errc::Stuck: return "Stuck";
    case Errc::BadParams: return "BadParams";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::BadTripleCount: return "BadTripleCount";
    case Errc::Parse: return "Parse";
    case Errc::Incompatible: return "Incompatible";
  }
  return "Unknown";
}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  Graph g(vertex_count);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

void Graph::check_vertex(Vertex v) const {
  if (v >= adj_.size()) {
    throw Error(Errc::VertexOutOfRange,
                "vertex " + std::to_string(v) + " not in [0, " + std::to_string(adj_.size()) + ")");
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= adj_.size() || v >= adj_.size()) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const Vertex target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), target);
}

void Graph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error(Errc::SelfLoop, "self-loop at vertex " + std::to_string(u));
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) {
    throw Error(Errc::DuplicateEdge,
                "edge (" + std::to_string(u) + "," + std::to_string(v) + ") already present");
  }
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
}

Graph Graph::with_edge(Vertex u, Vertex v) const {
  Graph copy = *this;
  copy.add_edge(u, v);
  return copy;
}

Graph Graph::with_edges(std::span<const Edge> edges) const {
  Graph copy = *this;
  for (const Edge& e : edges) copy.add_edge(e);
  return copy;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t common_neighbor_count(const Graph& g, Vertex u, Vertex v) {
  if (u == v) throw Error(Errc::SameVertex, "common neighbors of a vertex with itself");
  const auto& a = g.neighbors(u);
  const auto& b = g.neighbors(v);
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

VertexSet two_neighborhood(const Graph& g, Vertex v) {
  VertexSet out;
  for (Vertex w : g.neighbors(v)) {
    for (Vertex u : g.neighbors(w)) {
      if (u != v) out.push_back(u);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Edge> non_edges_within(const Graph& g, std::span<const Vertex> vertices) {
  VertexSet s(vertices.begin(), vertices.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<Edge> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!g.has_edge(s[i], s[j])) out.emplace_back(s[i], s[j]);
    }
  }
  return out;
}

bool is_edge_subset(const Graph& sub, const Graph& super) {
  if (sub.vertex_count() != super.vertex_count()) return false;
  for (Vertex u = 0; u < sub.vertex_count(); ++u) {
    const auto& a = sub.neighbors(u);
    const auto& b = super.neighbors(u);
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) return false;
  }
  return true;
}

std::vector<Edge> edge_difference(const Graph& super, const Graph& sub) {
  std::vector<Edge> out;
  for (const Edge& e : super.edges()) {
    if (!sub.has_edge(e.u, e.v)) out.push_back(e);
  }
  return out;
}

std::vector<std::size_t> component_ids(const Graph& g) {
  const std::size_t n = g.vertex_count();
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, unset);
  std::size_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (comp[y] == unset) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return comp;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(0, static_cast<Vertex>(n - 1));
  return g;
}

Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

}  // namespace kanon
