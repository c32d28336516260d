#include "kanon/greedy_k1.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <tuple>

#include "kanon/anonymity.hpp"
#include "kanon/rng.hpp"
#include "tracker.hpp"

namespace kanon {

using detail::record_step;
using detail::ResidualTracker;

namespace {

void require_size(const Graph& g, std::size_t k) {
  if (g.vertex_count() < k + 1) {
    throw Error(Errc::TooSmall, "need at least k+1 = " + std::to_string(k + 1) +
                                    " vertices, have " + std::to_string(g.vertex_count()));
  }
}

void require_no_isolated(const Graph& g) {
  VertexSet isolated;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) isolated.push_back(v);
  if (!isolated.empty()) {
    throw Error(Errc::IsolatedVertex,
                std::to_string(isolated.size()) + " isolated vertices have no original neighbors",
                isolated);
  }
}

// The m vertices of highest degree, ties by id.
VertexSet top_degree(const Graph& g, std::size_t m) {
  VertexSet order(g.vertex_count());
  for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  order.resize(m);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<Edge> missing_within(const Graph& g, const VertexSet& s) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.has_edge(s[i], s[j])) out.emplace_back(s[i], s[j]);
  return out;
}

EdgePlan finish(EdgePlan plan, const ResidualTracker& t) {
  plan.result = t.graph();
  plan.residual_after = t.total();
  return plan;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.below(items.size())];
}

}  // namespace

EdgePlan weak_any(const Graph& g, std::size_t k, std::uint64_t seed) {
  require_size(g, k);
  ResidualTracker t(Mode::Weak, g, {k, 1});
  EdgePlan plan;
  plan.residual_before = t.total();
  Rng rng(seed);
  VertexSet clique;
  while (t.total() > 0) {
    const std::size_t before = t.total();
    const Graph& cur = t.graph();
    VertexSet connected, lonely;
    for (Vertex v : t.deficient()) (cur.degree(v) > 0 ? connected : lonely).push_back(v);
    std::vector<Edge> step;
    if (!connected.empty()) {
      const Vertex u = pick(rng, connected);
      std::vector<char> near(cur.vertex_count(), 0);
      near[u] = 1;
      for (Vertex x : two_neighborhood(cur, u)) near[x] = 1;
      VertexSet via(cur.neighbors(u));
      rng.shuffle(std::span<Vertex>(via));
      for (Vertex a : via) {
        VertexSet far;
        for (Vertex x = 0; x < cur.vertex_count(); ++x)
          if (!near[x] && x != a) far.push_back(x);
        if (!far.empty()) {
          step.emplace_back(a, pick(rng, far));
          break;
        }
      }
      // Every non-sharer is a neighbor of u that no other neighbor reaches;
      // u itself must then move next to one of its neighbors' neighbors.
      for (Vertex y = 0; y < cur.vertex_count() && step.empty(); ++y) {
        if (near[y]) continue;
        for (Vertex w : cur.neighbors(y)) {
          if (w != u && !cur.has_edge(u, w)) {
            step.emplace_back(u, w);
            break;
          }
        }
      }
      if (step.empty())
        throw Error(Errc::Stuck, "no edge raises the sharer count of vertex " + std::to_string(u));
    } else {
      if (clique.empty()) {
        clique = top_degree(cur, k + 1);
        step = missing_within(cur, clique);
      }
      for (Vertex z : lonely) {
        if (!std::binary_search(clique.begin(), clique.end(), z)) {
          step.emplace_back(clique.front(), z);
          break;
        }
      }
    }
    t.add(step);
    record_step(plan, step, before, t.total());
  }
  return finish(std::move(plan), t);
}

EdgePlan strong_any(const Graph& g, std::size_t k, std::uint64_t seed) {
  require_no_isolated(g);
  require_size(g, k);
  ResidualTracker t(Mode::Strong, g, {k, 1});
  EdgePlan plan;
  plan.residual_before = t.total();
  Rng rng(seed);
  const std::size_t n = g.vertex_count();
  while (t.total() > 0) {
    const std::size_t before = t.total();
    const VertexSet def = t.deficient();
    const Vertex u = pick(rng, def);
    std::vector<char> taken(n, 0);
    taken[u] = 1;
    for (Vertex x : t.sharers_of(u)) taken[x] = 1;
    // Any original neighbor a of u works once x is neither a nor a sharer.
    VertexSet via(g.neighbors(u));
    rng.shuffle(std::span<Vertex>(via));
    std::optional<Edge> e;
    for (Vertex a : via) {
      VertexSet far;
      for (Vertex x = 0; x < n; ++x)
        if (!taken[x] && x != a) far.push_back(x);
      if (!far.empty()) {
        e = Edge(a, pick(rng, far));
        break;
      }
    }
    if (!e) throw Error(Errc::Stuck, "no edge raises the sharer count of vertex " + std::to_string(u));
    const Edge step[1] = {*e};
    t.add(step);
    record_step(plan, step, before, t.total());
  }
  return finish(std::move(plan), t);
}

EdgePlan weak_greedy(const Graph& g, std::size_t k, std::uint64_t /*seed*/) {
  require_size(g, k);
  ResidualTracker t(Mode::Weak, g, {k, 1});
  EdgePlan plan;
  plan.residual_before = t.total();
  if (t.total() == 0) return finish(std::move(plan), t);

  const VertexSet clique = top_degree(g, k + 1);
  if (auto edges = missing_within(g, clique); !edges.empty()) {
    const std::size_t before = t.total();
    t.add(edges);
    record_step(plan, edges, before, t.total());
  }

  while (t.total() > 0) {
    const std::size_t before = t.total();
    const Graph& cur = t.graph();
    VertexSet pool = clique;
    for (Vertex v : t.deficient()) {
      pool.push_back(v);
      for (Vertex w : cur.neighbors(v)) pool.push_back(w);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    std::vector<std::array<Vertex, 3>> triples;
    for (Vertex c : clique) {
      for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
          if (pool[i] == c || pool[j] == c) continue;
          std::array<Vertex, 3> tri{c, pool[i], pool[j]};
          std::sort(tri.begin(), tri.end());
          triples.push_back(tri);
        }
      }
    }
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

    // Largest drop, then fewest new edges, then the smallest triple.
    std::size_t best_gain = 0, best_size = 0;
    std::vector<Edge> best;
    for (const auto& tri : triples) {
      std::vector<Edge> edges;
      for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}})
        if (!cur.has_edge(tri[i], tri[j])) edges.emplace_back(tri[i], tri[j]);
      if (edges.empty()) continue;
      const std::size_t gain = t.gain(edges);
      if (gain > best_gain || (gain == best_gain && gain > 0 && edges.size() < best_size)) {
        best_gain = gain;
        best_size = edges.size();
        best = std::move(edges);
      }
    }
    if (best_gain == 0) throw Error(Errc::Stuck, "no triangle lowers the residual");
    t.add(best);
    record_step(plan, best, before, t.total());
  }
  return finish(std::move(plan), t);
}

EdgePlan strong_greedy(const Graph& g, std::size_t k) {
  require_no_isolated(g);
  ResidualTracker t(Mode::Strong, g, {k, 1});
  EdgePlan plan;
  plan.residual_before = t.total();
  const std::size_t n = g.vertex_count();
  while (t.total() > 0) {
    const std::size_t before = t.total();
    const Graph& cur = t.graph();
    // Only an edge at an original neighbor of a deficient vertex can help.
    std::vector<char> near(n, 0);
    for (Vertex v : t.deficient())
      for (Vertex a : g.neighbors(v)) near[a] = 1;
    std::optional<Edge> best;
    std::size_t best_gain = 0;
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) {
        if ((!near[a] && !near[b]) || cur.has_edge(a, b)) continue;
        const Edge e[1] = {Edge(a, b)};
        const std::size_t gain = t.gain(e);
        if (gain > best_gain) {
          best_gain = gain;
          best = e[0];
        }
      }
    }
    if (!best) throw Error(Errc::Stuck, "no edge lowers the strong residual");
    const Edge step[1] = {*best};
    t.add(step);
    record_step(plan, step, before, t.total());
  }
  return finish(std::move(plan), t);
}

}  // namespace kanon
