#include "kanon/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

namespace kanon {

namespace {

using Word = std::uint64_t;
constexpr std::size_t kMaxOracleVertices = 1024;

// Bitset adjacency for desk-scale graphs; row v holds N(v).
class MaskGraph {
 public:
  explicit MaskGraph(const Graph& g)
      : n_(g.vertex_count()), words_((n_ + 63) / 64), bits_(n_ * words_, 0) {
    for (const Edge& e : g.edges()) add(e);
  }

  std::size_t size() const { return n_; }
  bool has(Vertex a, Vertex b) const { return (row(a)[b / 64] >> (b % 64)) & 1; }
  bool isolated(Vertex v) const {
    const Word* r = row(v);
    return std::all_of(r, r + words_, [](Word w) { return w == 0; });
  }
  void add(const Edge& e) { flip(e, true); }
  void remove(const Edge& e) { flip(e, false); }

  // |N_this(a) ∩ N_other(b)|
  std::size_t common(Vertex a, const MaskGraph& other, Vertex b) const {
    const Word* x = row(a);
    const Word* y = other.row(b);
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_; ++i) c += static_cast<std::size_t>(std::popcount(x[i] & y[i]));
    return c;
  }

 private:
  const Word* row(Vertex v) const { return bits_.data() + v * words_; }
  Word* row(Vertex v) { return bits_.data() + v * words_; }
  void flip(const Edge& e, bool on) {
    const Word bu = Word{1} << (e.u % 64);
    const Word bv = Word{1} << (e.v % 64);
    if (on) {
      row(e.u)[e.v / 64] |= bv;
      row(e.v)[e.u / 64] |= bu;
    } else {
      row(e.u)[e.v / 64] &= ~bv;
      row(e.v)[e.u / 64] &= ~bu;
    }
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<Word> bits_;
};

class Checker {
 public:
  Checker(Mode mode, const MaskGraph& original, const AnonParams& p)
      : mode_(mode), original_(original), p_(p) {}

  bool vertex_ok(const MaskGraph& current, Vertex v) const {
    const MaskGraph& mine = mode_ == Mode::Weak ? current : original_;
    std::size_t c = 0;
    for (Vertex u = 0; u < current.size(); ++u) {
      if (u == v) continue;
      if (mine.common(v, current, u) >= p_.ell && ++c >= p_.k) return true;
    }
    return false;
  }

  // Both targets are monotone under edge addition, so only vertices that
  // were deficient before need re-checking.
  std::vector<Vertex> deficient(const MaskGraph& current, const std::vector<Vertex>& among) const {
    std::vector<Vertex> out;
    for (Vertex v : among)
      if (!vertex_ok(current, v)) out.push_back(v);
    return out;
  }

  bool all_ok(const MaskGraph& current, const std::vector<Vertex>& among) const {
    for (Vertex v : among)
      if (!vertex_ok(current, v)) return false;
    return true;
  }

  Mode mode() const { return mode_; }
  const MaskGraph& original() const { return original_; }

 private:
  Mode mode_;
  const MaskGraph& original_;
  AnonParams p_;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : key) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

class PrunedSearch {
 public:
  PrunedSearch(const Checker& checker, const MaskGraph& start, std::vector<Vertex> deficient)
      : checker_(checker), current_(start), n_(start.size()), initial_(std::move(deficient)) {}

  bool run(std::size_t budget) { return dfs(budget, initial_); }

  std::vector<Edge> witness() const {
    std::vector<Edge> w = added_;
    std::sort(w.begin(), w.end());
    return w;
  }
  std::uint64_t explored() const { return explored_; }

 private:
  std::vector<std::uint32_t> key() const {
    std::vector<std::uint32_t> k;
    k.reserve(added_.size());
    for (const Edge& e : added_) k.push_back(static_cast<std::uint32_t>(e.u * n_ + e.v));
    std::sort(k.begin(), k.end());
    return k;
  }

  // Vertices at which a new edge can change the sharers of v.
  std::vector<Vertex> touch_set(Vertex v) const {
    std::vector<Vertex> out;
    const bool weak = checker_.mode() == Mode::Weak;
    const MaskGraph& g = weak ? current_ : checker_.original();
    for (Vertex a = 0; a < n_; ++a)
      if (g.has(v, a) || (weak && a == v)) out.push_back(a);
    return out;
  }

  std::vector<Edge> candidates(const std::vector<Vertex>& touch) const {
    std::vector<char> in_touch(n_, 0);
    for (Vertex a : touch) in_touch[a] = 1;
    std::vector<Edge> out;
    for (Vertex a : touch) {
      for (Vertex x = 0; x < n_; ++x) {
        if (x == a || current_.has(a, x)) continue;
        // Pairs with both ends in the touch set are emitted once.
        if (in_touch[x] && x < a) continue;
        out.emplace_back(a, x);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t lower_bound() const {
    if (checker_.mode() != Mode::Weak) return 0;
    std::size_t isolated = 0;
    for (Vertex v = 0; v < n_; ++v)
      if (current_.isolated(v)) ++isolated;
    return (isolated + 1) / 2;
  }

  bool dfs(std::size_t remaining, const std::vector<Vertex>& previously) {
    ++explored_;
    std::vector<Vertex> deficient = checker_.deficient(current_, previously);
    if (deficient.empty()) return true;
    if (remaining == 0 || lower_bound() > remaining) return false;
    auto k = key();
    auto it = failed_.find(k);
    if (it != failed_.end() && it->second >= remaining) return false;
    std::vector<Edge> best;
    bool have_best = false;
    for (Vertex v : deficient) {
      auto c = candidates(touch_set(v));
      if (!have_best || c.size() < best.size()) {
        best = std::move(c);
        have_best = true;
      }
    }
    for (const Edge& e : best) {
      current_.add(e);
      added_.push_back(e);
      if (dfs(remaining - 1, deficient)) return true;
      added_.pop_back();
      current_.remove(e);
    }
    failed_[std::move(k)] = remaining;
    return false;
  }

  const Checker& checker_;
  MaskGraph current_;
  std::size_t n_;
  std::vector<Vertex> initial_;
  std::vector<Edge> added_;
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, KeyHash> failed_;
  std::uint64_t explored_ = 0;
};

bool exhaustive_size(const Checker& checker, const MaskGraph& start,
                     const std::vector<Vertex>& deficient, const std::vector<Edge>& pool,
                     std::size_t size, OracleResult& out) {
  const std::size_t m = pool.size();
  if (size > m) return false;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  MaskGraph current = start;
  for (;;) {
    for (std::size_t i : idx) current.add(pool[i]);
    ++out.explored;
    bool ok = checker.all_ok(current, deficient);
    for (std::size_t i : idx) current.remove(pool[i]);
    if (ok) {
      for (std::size_t i : idx) out.witness.push_back(pool[i]);
      return true;
    }
    // Next combination in lexicographic order.
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == m - size + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

OracleResult solve(Mode mode, const Graph& g, const AnonParams& p, const OracleOptions& options) {
  p.validate();
  const std::size_t n = g.vertex_count();
  if (n > kMaxOracleVertices) {
    throw Error(Errc::BadParams, "oracle supports at most " +
                                     std::to_string(kMaxOracleVertices) + " vertices");
  }
  MaskGraph original(g);
  Checker checker(mode, original, p);
  OracleResult out;

  std::vector<Edge> pool;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) pool.emplace_back(u, v);

  std::vector<Vertex> everyone(n);
  for (Vertex v = 0; v < n; ++v) everyone[v] = v;
  const std::vector<Vertex> deficient = checker.deficient(original, everyone);

  // Feasibility is decided by the full completion.
  MaskGraph complete = original;
  for (const Edge& e : pool) complete.add(e);
  if (!checker.all_ok(complete, deficient)) {
    out.feasible = false;
    return out;
  }
  out.feasible = true;
  const std::size_t budget = std::min(options.max_budget, pool.size());

  if (options.search == OracleSearch::Exhaustive) {
    if (pool.size() > options.max_pairs) {
      throw Error(Errc::BudgetExceeded, std::to_string(pool.size()) +
                                            " candidate pairs exceed the exhaustive ceiling of " +
                                            std::to_string(options.max_pairs));
    }
    for (std::size_t s = 0; s <= budget; ++s) {
      if (exhaustive_size(checker, original, deficient, pool, s, out)) {
        out.minimum = s;
        std::sort(out.witness.begin(), out.witness.end());
        return out;
      }
    }
  } else {
    PrunedSearch search(checker, original, deficient);
    for (std::size_t s = 0; s <= budget; ++s) {
      if (search.run(s)) {
        out.minimum = s;
        out.witness = search.witness();
        out.explored = search.explored();
        return out;
      }
    }
    out.explored = search.explored();
  }
  throw Error(Errc::BudgetExceeded,
              "no solution with at most " + std::to_string(budget) + " added edges");
}

}  // namespace

OracleResult oracle_weak(const Graph& g, const AnonParams& p, const OracleOptions& options) {
  return solve(Mode::Weak, g, p, options);
}

OracleResult oracle_strong(const Graph& g, const AnonParams& p, const OracleOptions& options) {
  return solve(Mode::Strong, g, p, options);
}

OracleResult oracle(Mode mode, const Graph& g, const AnonParams& p,
                    const OracleOptions& options) {
  return solve(mode, g, p, options);
}

}  // namespace kanon
