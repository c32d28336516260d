#include "support/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "kanon/hardgen.hpp"
#include "kanon/rng.hpp"

namespace kanon::testing {

namespace {

std::size_t pair_index(std::size_t a, std::size_t b, std::size_t n) {
  if (a > b) std::swap(a, b);
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.vertex_count();
  // Vertices are ordered by (degree, sorted neighbor degrees); only
  // permutations inside equal-signature classes are tried.
  std::vector<std::vector<std::size_t>> sig(n);
  for (Vertex v = 0; v < n; ++v) {
    sig[v].push_back(g.degree(v));
    std::vector<std::size_t> nd;
    for (Vertex w : g.neighbors(v)) nd.push_back(g.degree(w));
    std::sort(nd.begin(), nd.end());
    sig[v].insert(sig[v].end(), nd.begin(), nd.end());
  }
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return sig[a] < sig[b]; });
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && sig[order[j]] == sig[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  const auto edges = g.edges();
  std::vector<std::size_t> pos(n);
  std::uint64_t best = UINT64_MAX;
  // Iterate the product of per-class permutations.
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    std::uint64_t code = 0;
    for (const Edge& e : edges) code |= std::uint64_t{1} << pair_index(pos[e.u], pos[e.v], n);
    best = std::min(best, code);
    std::size_t c = 0;
    for (; c < classes.size(); ++c) {
      auto [lo, hi] = classes[c];
      if (std::next_permutation(order.begin() + lo, order.begin() + hi)) break;
    }
    if (c == classes.size()) break;
  }
  return best;
}

std::vector<Graph> nonisomorphic_graphs(std::size_t n) {
  if (n == 0) return {Graph(0)};
  std::vector<Graph> prev = nonisomorphic_graphs(n - 1);
  std::vector<Graph> out;
  std::unordered_set<std::uint64_t> seen;
  const std::size_t m = n - 1;
  for (const Graph& base : prev) {
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << m); ++subset) {
      Graph g(n);
      for (const Edge& e : base.edges()) g.add_edge(e);
      for (Vertex v = 0; v < m; ++v)
        if (subset & (std::uint64_t{1} << v)) g.add_edge(v, static_cast<Vertex>(m));
      if (seen.insert(canonical_code(g)).second) out.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<Graph> nonisomorphic_graphs_up_to(std::size_t max_n) {
  std::vector<Graph> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto part = nonisomorphic_graphs(n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Graph> random_corpus(std::size_t count, std::size_t min_n, std::size_t max_n,
                                 double min_p, double max_p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Graph> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = min_n + rng.below(max_n - min_n + 1);
    double p = min_p + (max_p - min_p) * rng.unit();
    out.push_back(random_graph(n, p, seed * 1000003u + i));
  }
  return out;
}

bool has_isolated_vertex(const Graph& g) {
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) return true;
  return false;
}

}  // namespace kanon::testing
