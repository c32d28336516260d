#include "kanon/matching.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "kanon/rng.hpp"

namespace kanon {

namespace {

constexpr int kNone = -1;

// Local re-indexing of an allowed-pair structure to 0..m-1.
struct LocalGraph {
  std::vector<Vertex> ids;
  std::vector<std::vector<int>> adj;
  std::vector<std::pair<int, int>> pairs;
};

LocalGraph localize(std::span<const Vertex> vertices, std::span<const Edge> allowed) {
  LocalGraph lg;
  lg.ids.assign(vertices.begin(), vertices.end());
  std::sort(lg.ids.begin(), lg.ids.end());
  lg.ids.erase(std::unique(lg.ids.begin(), lg.ids.end()), lg.ids.end());
  std::unordered_map<Vertex, int> index;
  for (std::size_t i = 0; i < lg.ids.size(); ++i) index[lg.ids[i]] = static_cast<int>(i);
  lg.adj.resize(lg.ids.size());
  for (const Edge& e : allowed) {
    auto a = index.find(e.u);
    auto b = index.find(e.v);
    if (a == index.end() || b == index.end() || e.u == e.v) continue;
    lg.pairs.emplace_back(a->second, b->second);
  }
  std::sort(lg.pairs.begin(), lg.pairs.end());
  lg.pairs.erase(std::unique(lg.pairs.begin(), lg.pairs.end()), lg.pairs.end());
  for (auto [a, b] : lg.pairs) {
    lg.adj[a].push_back(b);
    lg.adj[b].push_back(a);
  }
  return lg;
}

// Edmonds' algorithm with explicit blossom contraction via base labels;
// O(V^3) overall, one BFS per free root.
class Blossom {
 public:
  explicit Blossom(const std::vector<std::vector<int>>& adj)
      : adj_(adj), n_(static_cast<int>(adj.size())), mate_(n_, kNone), parent_(n_),
        base_(n_), used_(n_), in_blossom_(n_) {}

  std::vector<int> run() {
    // Greedy warm start.
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] != kNone) continue;
      for (int u : adj_[v]) {
        if (mate_[u] == kNone) {
          mate_[u] = v;
          mate_[v] = u;
          break;
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] != kNone) continue;
      int end = find_path(v);
      while (end != kNone) {
        int pv = parent_[end];
        int ppv = mate_[pv];
        mate_[end] = pv;
        mate_[pv] = end;
        end = ppv;
      }
    }
    return mate_;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> seen(n_, 0);
    for (;;) {
      a = base_[a];
      seen[a] = 1;
      if (mate_[a] == kNone) break;
      a = parent_[mate_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = 1;
      in_blossom_[base_[mate_[v]]] = 1;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), kNone);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] != kNone && parent_[mate_[to]] != kNone)) {
          int cur_base = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom_[base_[i]]) {
              base_[i] = cur_base;
              if (!used_[i]) {
                used_[i] = 1;
                queue.push_back(i);
              }
            }
          }
        } else if (parent_[to] == kNone) {
          parent_[to] = v;
          if (mate_[to] == kNone) return to;
          used_[mate_[to]] = 1;
          queue.push_back(mate_[to]);
        }
      }
    }
    return kNone;
  }

  const std::vector<std::vector<int>>& adj_;
  int n_;
  std::vector<int> mate_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<char> used_;
  std::vector<char> in_blossom_;
};

}  // namespace

Matching max_matching(std::span<const Vertex> vertices, std::span<const Edge> allowed) {
  LocalGraph lg = localize(vertices, allowed);
  std::vector<int> mate = Blossom(lg.adj).run();
  Matching out;
  for (int v = 0; v < static_cast<int>(mate.size()); ++v) {
    if (mate[v] != kNone && v < mate[v]) out.emplace_back(lg.ids[v], lg.ids[mate[v]]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Matching greedy_matching(std::span<const Vertex> vertices, std::span<const Edge> allowed,
                         std::uint64_t seed) {
  LocalGraph lg = localize(vertices, allowed);
  std::vector<std::pair<int, int>> order = lg.pairs;
  Rng rng(seed);
  rng.shuffle(std::span(order));
  std::vector<char> used(lg.ids.size(), 0);
  Matching out;
  for (auto [a, b] : order) {
    if (used[a] || used[b]) continue;
    used[a] = used[b] = 1;
    out.emplace_back(lg.ids[a], lg.ids[b]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_valid_matching(std::span<const Edge> matching, std::span<const Edge> allowed) {
  std::vector<Edge> allowed_sorted(allowed.begin(), allowed.end());
  std::sort(allowed_sorted.begin(), allowed_sorted.end());
  std::vector<Vertex> used;
  for (const Edge& e : matching) {
    if (!std::binary_search(allowed_sorted.begin(), allowed_sorted.end(), e)) return false;
    used.push_back(e.u);
    used.push_back(e.v);
  }
  std::sort(used.begin(), used.end());
  return std::adjacent_find(used.begin(), used.end()) == used.end();
}

}  // namespace kanon
