#include "kanon/approx_kl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "kanon/anonymity.hpp"
#include "kanon/rng.hpp"
#include "tracker.hpp"

namespace kanon {

using detail::record_step;
using detail::ResidualTracker;

SupernodePartition random_partition(std::size_t n, std::size_t group_size, std::uint64_t seed) {
  if (group_size == 0 || n < group_size)
    throw Error(Errc::BadParams, "cannot split " + std::to_string(n) + " vertices into groups of " +
                                     std::to_string(group_size));
  VertexSet order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  Rng rng(seed);
  rng.shuffle(std::span<Vertex>(order));
  SupernodePartition p;
  p.group_size = group_size;
  p.assignment.assign(n, 0);
  const std::size_t count = n / group_size;
  p.groups.resize(count);
  for (std::size_t i = 0; i < count * group_size; ++i) p.groups[i / group_size].push_back(order[i]);
  for (std::size_t i = count * group_size; i < n; ++i)
    p.groups[i - count * group_size].push_back(order[i]);
  for (std::size_t gi = 0; gi < count; ++gi) {
    std::sort(p.groups[gi].begin(), p.groups[gi].end());
    for (Vertex v : p.groups[gi]) p.assignment[v] = gi;
  }
  return p;
}

namespace {

// Union of d random perfect matchings on s supernodes, resampled so no pair
// repeats. With s odd, group 0 also plays a second node and so ends with 2d
// super-neighbors. A round that keeps colliding is dropped; the repair pass
// covers the shortfall.
std::vector<Edge> random_regular(std::size_t s, std::size_t d, Rng& rng) {
  std::vector<Edge> out;
  if (s < 2) return out;
  const std::size_t nodes = s + (s % 2);
  auto group = [&](Vertex x) { return x == s ? Vertex{0} : x; };
  std::set<std::pair<Vertex, Vertex>> used;
  VertexSet order(nodes);
  for (std::size_t round = 0; round < d; ++round) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::iota(order.begin(), order.end(), Vertex{0});
      rng.shuffle(std::span<Vertex>(order));
      std::vector<Edge> pairs;
      bool ok = true;
      for (std::size_t i = 0; i < nodes && ok; i += 2) {
        const Vertex a = group(order[i]), b = group(order[i + 1]);
        const auto key = std::minmax(a, b);
        ok = a != b && !used.count(key);
        for (const Edge& e : pairs) ok = ok && !(e.u == key.first && e.v == key.second);
        if (ok) pairs.emplace_back(a, b);
      }
      if (!ok) continue;
      for (const Edge& e : pairs) {
        used.insert({e.u, e.v});
        out.push_back(e);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t min_sharers(const Graph& g, std::size_t ell) {
  const auto r = residual(g, {1, ell});
  if (r.sharer_count.empty()) return 0;
  return *std::min_element(r.sharer_count.begin(), r.sharer_count.end());
}

// Makes v gain one sharer: some u joined to ell neighbors of v, reusing
// edges u already has. Vertices with fewer than ell neighbors first get
// edges to the lowest non-neighbors.
std::vector<Edge> star_for(const ResidualTracker& t, Vertex v, std::size_t ell,
                           const VertexSet& sharers) {
  const Graph& g = t.graph();
  const std::size_t n = g.vertex_count();
  std::vector<Edge> out;
  VertexSet nb(g.neighbors(v));
  for (Vertex x = 0; x < n && nb.size() < ell; ++x) {
    if (x != v && !g.has_edge(v, x)) {
      out.emplace_back(v, x);
      nb.insert(std::upper_bound(nb.begin(), nb.end(), x), x);
    }
  }
  std::optional<Vertex> best;
  std::size_t best_missing = SIZE_MAX;
  for (;;) {
    for (Vertex u = 0; u < n; ++u) {
      if (u == v || std::binary_search(sharers.begin(), sharers.end(), u)) continue;
      std::size_t usable = 0, have = 0;
      for (Vertex w : nb) {
        if (w == u) continue;
        ++usable;
        if (g.has_edge(u, w)) ++have;
      }
      if (usable < ell) continue;
      const std::size_t missing = ell - std::min(have, ell);
      if (missing < best_missing) {
        best_missing = missing;
        best = u;
      }
    }
    if (best) break;
    // Every non-sharer sits inside N(v); widen N(v) and look again.
    Vertex x = 0;
    while (x < n && (x == v || std::binary_search(nb.begin(), nb.end(), x))) ++x;
    if (x == n) throw Error(Errc::Stuck, "no vertex can become a sharer of " + std::to_string(v));
    out.emplace_back(v, x);
    nb.insert(std::upper_bound(nb.begin(), nb.end(), x), x);
  }
  std::size_t need = best_missing;
  for (Vertex w : nb) {
    if (need == 0) break;
    if (w == *best || g.has_edge(*best, w)) continue;
    if (std::find(out.begin(), out.end(), Edge(*best, w)) != out.end()) continue;
    out.emplace_back(*best, w);
    --need;
  }
  return out;
}

}  // namespace

ExpanderRun weak_expander_run(const Graph& g, std::size_t k, std::size_t ell, std::uint64_t seed,
                              std::optional<std::size_t> k_prime) {
  const std::size_t n = g.vertex_count();
  if (ell == 0 || k < ell || 2 * k > n || n < 2 * ell) {
    throw Error(Errc::BadParams, "expander needs ell <= k <= n/2 and n >= 2*ell (n=" +
                                     std::to_string(n) + ", k=" + std::to_string(k) +
                                     ", ell=" + std::to_string(ell) + ")");
  }
  ExpanderRun run;
  run.k_prime = k_prime ? *k_prime : min_sharers(g, ell);
  run.plan.result = g;
  run.plan.residual_before = residual(g, {k, ell}).total;
  if (run.plan.residual_before == 0) return run;

  Rng rng(seed);
  run.partition = random_partition(n, ell, rng.below(UINT64_MAX));
  const std::size_t s = run.partition.groups.size();
  const double gap = static_cast<double>(k > run.k_prime ? k - run.k_prime : 1);
  run.degree = static_cast<std::size_t>(std::ceil(std::sqrt(gap / static_cast<double>(ell)))) + 1;
  run.degree = std::min(run.degree, s - 1);
  run.super_edges = random_regular(s, run.degree, rng);

  std::vector<Edge> edges;
  for (const Edge& se : run.super_edges)
    for (Vertex x : run.partition.groups[se.u])
      for (Vertex y : run.partition.groups[se.v])
        if (!g.has_edge(x, y)) edges.emplace_back(x, y);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  ResidualTracker t(Mode::Weak, g, {k, ell});
  if (!edges.empty()) {
    const std::size_t before = t.total();
    t.add(edges);
    record_step(run.plan, edges, before, t.total());
  }
  run.expander_edges = edges.size();

  while (t.total() > 0) {
    run.repaired = true;
    const std::size_t before = t.total();
    const Vertex v = t.deficient().front();
    const auto step = star_for(t, v, ell, t.sharers_of(v));
    t.add(step);
    record_step(run.plan, step, before, t.total());
  }
  run.plan.result = t.graph();
  run.plan.residual_after = t.total();
  return run;
}

EdgePlan weak_expander(const Graph& g, std::size_t k, std::size_t ell, std::uint64_t seed) {
  return weak_expander_run(g, k, ell, seed).plan;
}

EdgePlan strong_greedy_kl(const Graph& g, std::size_t k, std::size_t ell) {
  AnonParams{k, ell}.validate();
  const std::size_t n = g.vertex_count();
  VertexSet low;
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) < ell) low.push_back(v);
  if (!low.empty()) {
    throw Error(Errc::DegreeTooLow,
                std::to_string(low.size()) + " vertices have fewer than ell=" +
                    std::to_string(ell) + " original neighbors",
                low);
  }
  ResidualTracker t(Mode::Strong, g, {k, ell});
  EdgePlan plan;
  plan.residual_before = t.total();
  while (t.total() > 0) {
    const std::size_t before = t.total();
    const Graph& cur = t.graph();
    std::size_t best_gain = 0;
    std::vector<Edge> best;
    for (Vertex v : t.deficient()) {
      const VertexSet sh = t.sharers_of(v);
      for (Vertex u = 0; u < n; ++u) {
        if (u == v || std::binary_search(sh.begin(), sh.end(), u)) continue;
        std::size_t have = 0;
        std::vector<Edge> missing;
        for (Vertex w : g.neighbors(v)) {
          if (w == u) continue;
          if (cur.has_edge(u, w)) ++have;
          else missing.emplace_back(u, w);
        }
        if (have + missing.size() < ell) continue;
        missing.resize(ell - have);
        std::sort(missing.begin(), missing.end());
        const std::size_t gain = t.gain(missing);
        // Largest drop, then fewer edges, then lexicographic.
        const bool better =
            gain > best_gain ||
            (gain == best_gain && gain > 0 &&
             (missing.size() < best.size() || (missing.size() == best.size() && missing < best)));
        if (better) {
          best_gain = gain;
          best = std::move(missing);
        }
      }
    }
    if (best_gain == 0) throw Error(Errc::Stuck, "no group of ell edges lowers the strong residual");
    t.add(best);
    record_step(plan, best, before, t.total());
  }
  plan.result = t.graph();
  plan.residual_after = t.total();
  return plan;
}

}  // namespace kanon
