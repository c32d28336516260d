#include "kanon/exact21.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "kanon/anonymity.hpp"
#include "kanon/matching.hpp"
#include "kanon/rng.hpp"

namespace kanon {

namespace {

const AnonParams k21{2, 1};

enum class Shape { Isolated, Edge, Star, Path4, Square, Other };

struct Components {
  std::vector<std::size_t> id;
  std::vector<VertexSet> members;
  std::vector<Shape> shape;
};

Components classify_components(const Graph& g) {
  Components c;
  c.id = component_ids(g);
  std::size_t count = 0;
  for (std::size_t x : c.id) count = std::max(count, x + 1);
  c.members.resize(count);
  for (Vertex v = 0; v < g.vertex_count(); ++v) c.members[c.id[v]].push_back(v);
  c.shape.assign(count, Shape::Other);
  for (std::size_t i = 0; i < count; ++i) {
    const VertexSet& mem = c.members[i];
    std::size_t deg_sum = 0, max_deg = 0;
    for (Vertex v : mem) {
      deg_sum += g.degree(v);
      max_deg = std::max(max_deg, g.degree(v));
    }
    const std::size_t n = mem.size(), m = deg_sum / 2;
    if (n == 1) c.shape[i] = Shape::Isolated;
    else if (n == 2) c.shape[i] = Shape::Edge;
    else if (m == n - 1 && max_deg == n - 1) c.shape[i] = Shape::Star;
    else if (n == 4 && m == 3 && max_deg == 2) c.shape[i] = Shape::Path4;
    else if (n == 4 && m == 4 && max_deg == 2) c.shape[i] = Shape::Square;
  }
  return c;
}

Vertex star_center(const Graph& g, const VertexSet& mem) {
  for (Vertex v : mem)
    if (g.degree(v) == mem.size() - 1) return v;
  return mem.front();
}

Vertex other_neighbor(const Graph& g, Vertex a, Vertex not_this) {
  for (Vertex x : g.neighbors(a))
    if (x != not_this) return x;
  return not_this;
}

struct Placement {
  Vertex at;
  std::uint8_t amount;
  DeficitRule rule;
  PartnerNeed need;
};

// Local structure of a deficient vertex v of degree >= 2: its leaf
// neighbors and its degree-2 neighbors, which all lead to one vertex x.
struct Fan {
  VertexSet leaves;
  VertexSet middles;  // degree-2 neighbors, sorted
  std::optional<Vertex> far;
};

Fan fan_of(const Graph& g, Vertex v) {
  Fan f;
  for (Vertex w : g.neighbors(v)) {
    if (g.degree(w) == 1) {
      f.leaves.push_back(w);
    } else if (g.degree(w) == 2) {
      f.middles.push_back(w);
      f.far = other_neighbor(g, w, v);
    }
  }
  return f;
}

class Assigner {
 public:
  Assigner(const Graph& g, Mode mode) : g_(g), mode_(mode), comps_(classify_components(g)) {
    const std::size_t n = g.vertex_count();
    out_.deficit.assign(n, 0);
    out_.rule.assign(n, DeficitRule::None);
    out_.need.assign(n, PartnerNeed::Any);
    deficient_.assign(n, 0);
    for (Vertex v : residual(g, k21).deficient) deficient_[v] = 1;
  }

  DeficitAssignment run(std::span<const Vertex> scan_order) {
    const std::size_t n = g_.vertex_count();
    std::vector<Vertex> order(scan_order.begin(), scan_order.end());
    if (order.empty()) {
      order.resize(n);
      std::iota(order.begin(), order.end(), 0);
    }
    // Placements are merged per vertex, so the visiting order only decides
    // which rule label wins a tie.
    for (Vertex v : order) {
      if (!deficient_[v] || g_.degree(v) == 0) continue;
      for (const Placement& p : mode_ == Mode::Weak ? weak_rules(v) : strong_rules(v)) place(p);
    }
    out_.total = 0;
    for (auto d : out_.deficit) out_.total += d;
    return std::move(out_);
  }

 private:
  void place(const Placement& p) {
    if (out_.deficit[p.at] >= p.amount) return;
    out_.deficit[p.at] = p.amount;
    out_.rule[p.at] = p.rule;
    out_.need[p.at] = p.need;
  }

  std::vector<Placement> weak_rules(Vertex v) const {
    using R = DeficitRule;
    const std::size_t c = comps_.id[v];
    const VertexSet& mem = comps_.members[c];
    switch (comps_.shape[c]) {
      case Shape::Isolated:
        return {};
      case Shape::Edge:
        return {{mem[0], 1, R::IsolatedEdge, PartnerNeed::OneNeighbor},
                {mem[1], 1, R::IsolatedEdge, PartnerNeed::OneNeighbor}};
      case Shape::Star: {
        const Vertex center = star_center(g_, mem);
        return {{center, 1, mem.size() == 3 ? R::IsolatedPath3 : R::IsolatedStar,
                 PartnerNeed::TwoNeighbors}};
      }
      case Shape::Path4: {
        VertexSet inner;
        for (Vertex x : mem)
          if (g_.degree(x) == 2) inner.push_back(x);
        return {{inner[0], 1, R::IsolatedPath4, PartnerNeed::Any},
                {inner[1], 1, R::IsolatedPath4, PartnerNeed::Any}};
      }
      case Shape::Square: {
        const Vertex u = mem[0];
        const Vertex w = opposite(u);
        return {{u, 1, R::IsolatedSquare, PartnerNeed::Any},
                {w, 1, R::IsolatedSquare, PartnerNeed::Any}};
      }
      case Shape::Other:
        break;
    }
    if (g_.degree(v) == 1) {
      const Vertex a = g_.neighbors(v).front();
      const Vertex b = other_neighbor(g_, a, v);
      return {{a, 1, R::PathWithAttachment,
               g_.degree(b) >= 3 ? PartnerNeed::Any : PartnerNeed::OneNeighbor}};
    }
    const Fan f = fan_of(g_, v);
    if (f.middles.size() == 1 && f.leaves.size() == 1)
      return {{v, 1, R::PathWithAttachment, PartnerNeed::OneNeighbor}};
    if (f.middles.size() == 1 && f.leaves.size() >= 2)
      return {{f.middles[0], 1, R::LeafFan, PartnerNeed::Any}};
    if (f.middles.size() >= 2) {
      const Vertex w = common_middle(v, *f.far);
      return {{w, 1, g_.degree(v) == 2 ? R::SquareWithOutEdges : R::MultiSquare, PartnerNeed::Any}};
    }
    return {{v, 1, R::Fallback, PartnerNeed::Any}};
  }

  std::vector<Placement> strong_rules(Vertex v) const {
    using R = DeficitRule;
    const std::size_t c = comps_.id[v];
    const VertexSet& mem = comps_.members[c];
    switch (comps_.shape[c]) {
      case Shape::Isolated:
        return {};
      case Shape::Edge:
        return {{mem[0], 2, R::StrongIsolatedEdge, PartnerNeed::Any},
                {mem[1], 2, R::StrongIsolatedEdge, PartnerNeed::Any}};
      case Shape::Star: {
        if (mem.size() == 3) {
          return {{mem[0], 1, R::StrongPath3, PartnerNeed::Any},
                  {mem[1], 1, R::StrongPath3, PartnerNeed::Any},
                  {mem[2], 1, R::StrongPath3, PartnerNeed::Any}};
        }
        const Vertex center = star_center(g_, mem);
        VertexSet leaves;
        for (Vertex x : mem)
          if (x != center) leaves.push_back(x);
        return {{leaves[0], 1, R::StrongStar, PartnerNeed::Any},
                {leaves[1], 1, R::StrongStar, PartnerNeed::Any}};
      }
      case Shape::Path4: {
        VertexSet inner;
        for (Vertex x : mem)
          if (g_.degree(x) == 2) inner.push_back(x);
        return {{inner[0], 1, R::StrongIsolatedPath4, PartnerNeed::Any},
                {inner[1], 1, R::StrongIsolatedPath4, PartnerNeed::Any}};
      }
      case Shape::Square: {
        const Vertex u = mem[0];
        return {{u, 1, R::StrongIsolatedSquare, PartnerNeed::Any},
                {g_.neighbors(u).front(), 1, R::StrongIsolatedSquare, PartnerNeed::Any}};
      }
      case Shape::Other:
        break;
    }
    if (g_.degree(v) == 1) {
      const Vertex a = g_.neighbors(v).front();
      const Vertex b = other_neighbor(g_, a, v);
      if (g_.degree(b) >= 3) return {{a, 1, R::StrongPathPrefixBranch, PartnerNeed::Any}};
      return {{a, 1, R::StrongPathPrefix, PartnerNeed::Any},
              {b, 1, R::StrongPathPrefix, PartnerNeed::Any}};
    }
    const Fan f = fan_of(g_, v);
    if (f.middles.size() == 1 && f.leaves.size() == 1) {
      return {{v, 1, R::StrongPathPrefix, PartnerNeed::Any},
              {f.middles[0], 1, R::StrongPathPrefix, PartnerNeed::Any}};
    }
    if (f.middles.size() == 1 && f.leaves.size() >= 2)
      return {{f.middles[0], 1, R::StrongLeafFan, PartnerNeed::Any}};
    if (f.middles.size() >= 2) {
      const Vertex w = common_middle(v, *f.far);
      return {{w, 1, g_.degree(v) == 2 ? R::StrongSquareWithOutEdges : R::StrongMultiSquare,
               PartnerNeed::Any}};
    }
    return {{g_.neighbors(v).front(), 1, R::Fallback, PartnerNeed::Any}};
  }

  Vertex opposite(Vertex u) const {
    for (Vertex x : comps_.members[comps_.id[u]])
      if (x != u && !g_.has_edge(u, x)) return x;
    return u;
  }

  Vertex common_middle(Vertex v, Vertex x) const {
    for (Vertex w : g_.neighbors(v))
      if (g_.degree(w) == 2 && g_.has_edge(w, x)) return w;
    return v;
  }

  const Graph& g_;
  Mode mode_;
  Components comps_;
  std::vector<char> deficient_;
  DeficitAssignment out_;
};

// ---------------------------------------------------------------------------
// Completion: the graph being built plus the edges added so far.

class Completion {
 public:
  explicit Completion(const Graph& g) : original_(g), current_(g) {}

  const Graph& graph() const { return current_; }
  const std::vector<Edge>& added() const { return added_; }
  bool can_add(Vertex a, Vertex b) const { return a != b && !current_.has_edge(a, b); }
  void add(Vertex a, Vertex b) {
    current_.add_edge(a, b);
    added_.emplace_back(a, b);
  }
  void remove(Vertex a, Vertex b) {
    const Edge e(a, b);
    added_.erase(std::find(added_.begin(), added_.end(), e));
    current_ = original_.with_edges(added_);
  }

  EdgePlan finish(Mode mode) const {
    EdgePlan plan;
    plan.added_edges = added_;
    plan.result = current_;
    plan.residual_before = residual_for(mode, original_, original_, k21).total;
    plan.residual_after = residual_for(mode, original_, current_, k21).total;
    return plan;
  }

 private:
  const Graph& original_;
  Graph current_;
  std::vector<Edge> added_;
};

// Adds edges that most reduce the residual until none is left. Only used
// when the rule-based completion misses; keeps the postcondition intact.
void repair(Completion& c, Mode mode, const Graph& original) {
  const std::size_t n = original.vertex_count();
  for (;;) {
    auto rep = residual_for(mode, original, c.graph(), k21);
    if (rep.total == 0) return;
    std::optional<Edge> best;
    std::size_t best_total = rep.total;
    for (Vertex v : rep.deficient) {
      for (Vertex a = 0; a < n; ++a) {
        for (Vertex b : mode == Mode::Weak ? VertexSet{v} : original.neighbors(v)) {
          if (!c.can_add(a, b)) continue;
          auto t = residual_for(mode, original, c.graph().with_edge(a, b), k21).total;
          if (t < best_total) {
            best_total = t;
            best = Edge(a, b);
          }
        }
      }
    }
    if (!best) {
      for (Vertex a = 0; a < n && !best; ++a)
        for (Vertex b = a + 1; b < n && !best; ++b)
          if (c.can_add(a, b)) best = Edge(a, b);
      if (!best) throw Error(Errc::TooSmall, "no (2,1)-anonymous completion exists");
    }
    c.add(best->u, best->v);
  }
}

// ---------------------------------------------------------------------------
// Weak matching phase.
//
// Every deficit becomes a port, one endpoint of a future edge. An isolated
// edge uv carries two ports, both at u, so that u ends with degree three and
// fixes everything around it. Isolated vertices need one endpoint each and a
// neighbor of final degree at least three; those that find no port are placed
// by small hub gadgets, chosen to minimize the wasted endpoints.

// True when v has at least two sharers in g + e.
bool ok_with(const Graph& g, Vertex v, Edge e) {
  auto each_neighbor = [&](Vertex x, auto&& f) {
    for (Vertex y : g.neighbors(x)) f(y);
    if (x == e.u) f(e.v);
    else if (x == e.v) f(e.u);
  };
  std::optional<Vertex> first;
  bool two = false;
  each_neighbor(v, [&](Vertex w) {
    each_neighbor(w, [&](Vertex x) {
      if (two || x == v) return;
      if (!first) first = x;
      else if (x != *first) two = true;
    });
  });
  return two;
}

enum class PortKind { Any, Fan, Tail, Center, EdgeHub };

struct Port {
  PortKind kind = PortKind::Any;
  VertexSet at;     // candidate endpoints, preferred first
  VertexSet watch;  // vertices the port's edge itself must fix
  std::size_t item = 0;
  int capacity = 1;
  std::optional<Vertex> absorbed;  // isolated vertex already joined to an edge hub
  std::optional<Vertex> third;     // tails: the degree-2 vertex beyond the middle
  bool covered = false;            // tails: third already gets an edge, so at[0] needs nothing
};

Port make_port(PortKind kind, VertexSet at, VertexSet watch, std::size_t item, int capacity = 1) {
  Port p;
  p.kind = kind;
  p.at = std::move(at);
  p.watch = std::move(watch);
  p.item = item;
  p.capacity = capacity;
  return p;
}

// Maximum simple b-matching (capacities 1 or 2) over `nodes` nodes. Returns
// indices into `allowed`. Capacity-2 nodes go through the usual edge
// splitting gadget so that an ordinary maximum matching does the work.
std::vector<std::size_t> b_matching(const std::vector<int>& cap, const std::vector<Edge>& allowed,
                                    bool exact, std::uint64_t seed) {
  const std::size_t nodes = cap.size();
  std::vector<std::size_t> chosen;
  if (!exact) {
    std::vector<std::size_t> order(allowed.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(order));
    std::vector<int> used(nodes, 0);
    for (std::size_t t : order) {
      const Edge& e = allowed[t];
      if (used[e.u] < cap[e.u] && used[e.v] < cap[e.v]) {
        ++used[e.u];
        ++used[e.v];
        chosen.push_back(t);
      }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }
  std::vector<std::array<Vertex, 2>> slot(nodes);
  Vertex next = 0;
  VertexSet ids;
  for (std::size_t i = 0; i < nodes; ++i)
    for (int a = 0; a < cap[i]; ++a) {
      slot[i][a] = next;
      ids.push_back(next++);
    }
  std::vector<Edge> edges;
  std::vector<std::array<Vertex, 2>> gadget(allowed.size());
  for (std::size_t t = 0; t < allowed.size(); ++t) {
    const Edge& e = allowed[t];
    if (cap[e.u] == 1 && cap[e.v] == 1) {
      edges.emplace_back(slot[e.u][0], slot[e.v][0]);
      continue;
    }
    const Vertex x = next++, y = next++;
    ids.push_back(x);
    ids.push_back(y);
    gadget[t] = {x, y};
    edges.emplace_back(x, y);
    for (int a = 0; a < cap[e.u]; ++a) edges.emplace_back(slot[e.u][a], x);
    for (int b = 0; b < cap[e.v]; ++b) edges.emplace_back(slot[e.v][b], y);
  }
  const Matching m = max_matching(ids, edges);
  std::vector<Vertex> mate(next, next);
  for (const Edge& e : m) {
    mate[e.u] = e.v;
    mate[e.v] = e.u;
  }
  auto is_slot_of = [&](Vertex s, std::size_t node) {
    for (int a = 0; a < cap[node]; ++a)
      if (slot[node][a] == s) return true;
    return false;
  };
  for (std::size_t t = 0; t < allowed.size(); ++t) {
    const Edge& e = allowed[t];
    if (cap[e.u] == 1 && cap[e.v] == 1) {
      if (mate[slot[e.u][0]] == slot[e.v][0]) chosen.push_back(t);
    } else if (is_slot_of(mate[gadget[t][0]], e.u) && is_slot_of(mate[gadget[t][1]], e.v)) {
      chosen.push_back(t);
    }
  }
  return chosen;
}

class WeakMatcher {
 public:
  WeakMatcher(const Graph& g, const DeficitAssignment& da, std::uint64_t seed)
      : g_(g), da_(da), comps_(classify_components(g)), seed_(seed), c_(g),
        deficient_(g.vertex_count(), 0) {
    for (Vertex v : residual(g, k21).deficient) deficient_[v] = 1;
  }

  Completion build() {
    collect();
    absorb();
    place_excess();
    pair_edges();
    pair_ports();
    finish_ports();
    place_isolated();
    return std::move(c_);
  }

 private:
  struct Pair {
    Vertex a, b;
  };

  void collect() {
    for (std::size_t i = 0; i < comps_.members.size(); ++i) {
      const VertexSet& mem = comps_.members[i];
      switch (comps_.shape[i]) {
        case Shape::Isolated:
          iso_.push_back(mem[0]);
          break;
        case Shape::Edge:
          ports_.push_back(make_port(PortKind::EdgeHub, {mem[0]}, {mem[0], mem[1]}, i, 2));
          break;
        case Shape::Star: {
          const Vertex center = star_center(g_, mem);
          ports_.push_back(make_port(PortKind::Center, {center}, {center}, i, 1));
          break;
        }
        case Shape::Path4: {
          for (Vertex x : mem)
            if (g_.degree(x) == 2) ports_.push_back(make_port(PortKind::Any, {x}, {}, i, 1));
          break;
        }
        case Shape::Square: {
          const Vertex u = mem[0];
          ports_.push_back(make_port(PortKind::Any, {u}, {}, i, 1));
          ports_.push_back(make_port(PortKind::Any, {g_.neighbors(u).front()}, {}, i, 1));
          break;
        }
        case Shape::Other:
          break;
      }
    }
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (!da_.deficit[v] || comps_.shape[comps_.id[v]] != Shape::Other) continue;
      const std::size_t item = comps_.id[v];
      if (da_.rule[v] == DeficitRule::LeafFan) {
        // The fan center, or one of its leaves, can take the edge instead.
        Port p = make_port(PortKind::Fan, {v}, {}, item, 1);
        for (Vertex c : g_.neighbors(v)) {
          if (!deficient_[c]) continue;
          p.watch.push_back(c);
          p.at.push_back(c);
          for (Vertex x : g_.neighbors(c))
            if (g_.degree(x) == 1) p.at.push_back(x);
        }
        ports_.push_back(std::move(p));
        continue;
      }
      if (da_.need[v] == PartnerNeed::Any) {
        ports_.push_back(make_port(PortKind::Any, {v}, {}, item, 1));
        continue;
      }
      // The middle of a pendant path: the edge may also start at the leaf.
      Port p = make_port(PortKind::Tail, {v}, {v}, item, 1);
      for (Vertex x : g_.neighbors(v)) {
        if (g_.degree(x) == 1) {
          p.at.push_back(x);
          p.watch.push_back(x);
        } else if (g_.degree(x) == 2) {
          p.third = x;
          p.covered = da_.deficit[x] > 0 && da_.need[x] == PartnerNeed::Any;
        }
      }
      ports_.push_back(std::move(p));
    }
    for (const Port& p : ports_) total_ports_ += static_cast<std::size_t>(p.capacity);
    total_ports_ += iso_.size();
  }

  // Isolated vertices go to edge hubs first, then to ports with no needs.
  void absorb() {
    for (PortKind kind : {PortKind::EdgeHub, PortKind::Any, PortKind::Fan, PortKind::Tail}) {
      for (Port& p : ports_) {
        if (iso_.empty()) return;
        if (p.kind != kind || p.capacity == 0) continue;
        if (kind == PortKind::Tail && !p.covered) continue;
        const Vertex z = iso_.front();
        iso_.erase(iso_.begin());
        c_.add(p.at[0], z);
        pairs_.push_back({p.at[0], z});
        --p.capacity;
        if (kind == PortKind::EdgeHub) p.absorbed = z;
      }
    }
  }

  bool is_star(const Port& p) const {
    return p.kind == PortKind::Center && comps_.members[p.item].size() >= 4;
  }

  // Isolated vertices beyond the absorbing ports. An open port can take one
  // that in turn takes two more, a star leaf can take two, and a pendant path
  // can open both of its degree-2 vertices. Six left over make a tree and the
  // rest attach to a vertex of degree at least two. A small knapsack picks the
  // options with the fewest wasted endpoints.
  enum class Take { None, Hub, Leaf, Open, HubBoth, OpenBoth, OpenHub };
  struct Option {
    std::size_t takes, waste;
    Take how;
  };
  struct Group {
    std::vector<std::size_t> ports;
    std::vector<Option> options;
  };

  void place_excess() {
    const std::size_t excess = iso_.size();
    if (excess == 0) return;
    std::vector<Group> groups;
    std::vector<char> seen(ports_.size(), 0);
    for (std::size_t i = 0; i < ports_.size(); ++i) {
      const Port& p = ports_[i];
      if (p.capacity == 0 || seen[i]) continue;
      Group gr{{i}, {{0, 0, Take::None}, {3, 2, Take::Hub}}};
      if (is_star(p)) gr.options.push_back({2, 1, Take::Leaf});
      if (p.kind == PortKind::Tail && p.third) {
        gr.options.push_back({2, 1, Take::Open});
        // Two pendant paths meeting at the same third vertex.
        for (std::size_t j = i + 1; j < ports_.size(); ++j) {
          const Port& q = ports_[j];
          if (q.capacity == 0 || q.kind != PortKind::Tail || q.third != p.third) continue;
          gr.ports.push_back(j);
          seen[j] = 1;
          gr.options.push_back({6, 4, Take::HubBoth});
          gr.options.push_back({3, 1, Take::OpenBoth});
          gr.options.push_back({5, 3, Take::OpenHub});
          break;
        }
      }
      groups.push_back(std::move(gr));
    }

    constexpr std::size_t inf = SIZE_MAX / 4;
    const std::size_t ng = groups.size();
    std::vector<std::vector<std::size_t>> best(ng + 1, std::vector<std::size_t>(excess + 1, inf));
    std::vector<std::vector<std::size_t>> pick(ng + 1, std::vector<std::size_t>(excess + 1, 0));
    best[0][0] = 0;
    for (std::size_t i = 0; i < ng; ++i) {
      for (std::size_t e = 0; e <= excess; ++e) {
        if (best[i][e] == inf) continue;
        for (std::size_t o = 0; o < groups[i].options.size(); ++o) {
          const Option& op = groups[i].options[o];
          if (e + op.takes > excess) continue;
          const std::size_t w = best[i][e] + op.waste;
          if (w < best[i + 1][e + op.takes]) {
            best[i + 1][e + op.takes] = w;
            pick[i + 1][e + op.takes] = o;
          }
        }
      }
    }
    std::size_t best_cost = inf, best_e = 0;
    for (std::size_t e = excess + 1; e-- > 0;) {
      if (best[ng][e] == inf) continue;
      const std::size_t r = excess - e;
      const std::size_t waste = best[ng][e] + 4 * (r / 6) + r % 6;
      const std::size_t cost = (total_ports_ + waste + 1) / 2;
      if (cost < best_cost) {
        best_cost = cost;
        best_e = e;
      }
    }
    std::vector<std::size_t> choice(ng);
    for (std::size_t i = ng, e = best_e; i-- > 0;) {
      choice[i] = pick[i + 1][e];
      e -= groups[i].options[choice[i]].takes;
    }

    for (std::size_t i = 0; i < ng; ++i) {
      Port& p = ports_[groups[i].ports[0]];
      Port* q = groups[i].ports.size() > 1 ? &ports_[groups[i].ports[1]] : nullptr;
      switch (groups[i].options[choice[i]].how) {
        case Take::None:
          break;
        case Take::Hub:
          hub_on(p);
          break;
        case Take::Leaf: {
          const Vertex leaf = lowest_leaf(p.at[0]);
          c_.add(leaf, take_isolated());
          c_.add(leaf, take_isolated());
          p.capacity = 0;
          break;
        }
        case Take::Open:
          open_tail(p, true);
          if (q) q->covered = true;
          break;
        case Take::HubBoth:
          hub_on(p);
          hub_on(*q);
          break;
        case Take::OpenBoth:
          open_tail(p, true);
          open_tail(*q, false);
          break;
        case Take::OpenHub:
          open_tail(p, true);
          hub_on(*q);
          break;
      }
    }
    for (std::size_t r = iso_.size(); r >= 6; r -= 6) {
      Vertex t[6];
      for (Vertex& x : t) x = take_isolated();
      c_.add(t[0], t[1]);
      c_.add(t[0], t[2]);
      c_.add(t[0], t[3]);
      c_.add(t[3], t[4]);
      c_.add(t[3], t[5]);
    }
  }

  void hub_on(Port& p) {
    const Vertex hub = take_isolated();
    c_.add(p.at[0], hub);
    c_.add(hub, take_isolated());
    c_.add(hub, take_isolated());
    --p.capacity;
  }

  void open_tail(Port& p, bool with_third) {
    c_.add(p.at[0], take_isolated());
    if (with_third) c_.add(*p.third, take_isolated());
    p.capacity = 0;
  }

  // Two isolated edges uv, u'v' close with uu' and vu'.
  void pair_edges() {
    Port* open = nullptr;
    for (Port& p : ports_) {
      if (p.kind != PortKind::EdgeHub || p.capacity != 2) continue;
      if (!open) {
        open = &p;
        continue;
      }
      c_.add(open->watch[0], p.watch[0]);
      c_.add(open->watch[1], p.watch[0]);
      pairs_.push_back({open->watch[0], p.watch[0]});
      open->capacity = p.capacity = 0;
      open = nullptr;
    }
  }

  Vertex take_isolated() {
    const Vertex z = iso_.front();
    iso_.erase(iso_.begin());
    return z;
  }

  Vertex lowest_leaf(Vertex center) const {
    for (Vertex x : g_.neighbors(center))
      if (g_.degree(x) == 1) return x;
    return center;
  }

  // Whether the port at x is satisfied by the edge x-y, partner port q. A
  // partner that ends with degree three or more hands x two new sharers.
  bool side_ok(const Port& p, Vertex x, Vertex y, const Port& q) const {
    if (p.kind == PortKind::Any) return true;
    if (p.kind == PortKind::Tail && p.covered && x == p.at[0]) return true;
    const Graph& g = c_.graph();
    if (p.kind == PortKind::Fan) {
      if (x == p.at[0]) return true;
      for (Vertex w : p.watch)
        if (!ok_with(g, w, Edge(x, y))) return false;
      return true;
    }
    if (g.degree(y) >= 2 || (q.kind == PortKind::EdgeHub && y == q.at[0])) return true;
    if (p.kind == PortKind::EdgeHub && p.capacity == 2) return g.degree(y) >= 1;
    for (Vertex w : p.watch)
      if (!ok_with(g, w, Edge(x, y))) return false;
    return true;
  }

  std::optional<Edge> joint(const Port& p, const Port& q) const {
    for (Vertex x : p.at)
      for (Vertex y : q.at)
        if (c_.can_add(x, y) && side_ok(p, x, y, q) && side_ok(q, y, x, p)) return Edge(x, y);
    return std::nullopt;
  }

  void pair_ports() {
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < ports_.size(); ++i)
      if (ports_[i].capacity > 0) live.push_back(i);
    std::vector<int> cap;
    for (std::size_t i : live) cap.push_back(ports_[i].capacity);
    std::vector<Edge> allowed;
    std::vector<Edge> realized;
    for (std::size_t a = 0; a < live.size(); ++a) {
      for (std::size_t b = a + 1; b < live.size(); ++b) {
        if (auto e = joint(ports_[live[a]], ports_[live[b]])) {
          allowed.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
          realized.push_back(*e);
        }
      }
    }
    auto chosen = b_matching(cap, allowed, false, seed_);
    auto best = b_matching(cap, allowed, true, seed_);
    if (best.size() > chosen.size()) chosen = std::move(best);
    for (std::size_t t : chosen) {
      const Edge e = realized[t];
      if (!c_.can_add(e.u, e.v)) continue;
      c_.add(e.u, e.v);
      pairs_.push_back({e.u, e.v});
      --ports_[live[allowed[t].u]].capacity;
      --ports_[live[allowed[t].v]].capacity;
    }
  }

  void finish_ports() {
    for (std::size_t i = 0; i < ports_.size(); ++i) {
      Port& p = ports_[i];
      if (p.capacity == 0) continue;
      const Shape shape = comps_.shape[p.item];
      if (shape == Shape::Path4 || shape == Shape::Square) {
        Port* twin = nullptr;
        for (std::size_t j = i + 1; j < ports_.size(); ++j)
          if (ports_[j].item == p.item && ports_[j].capacity > 0) twin = &ports_[j];
        if (twin) {
          internal_edge(p.item);
          p.capacity = twin->capacity = 0;
          continue;
        }
      }
      switch (p.kind) {
        case PortKind::EdgeHub:
          finish_edge_hub(p);
          break;
        case PortKind::Center:
          if (!attach_checked(p)) {
            const Vertex center = p.at[0];
            VertexSet leaves;
            for (Vertex x : g_.neighbors(center)) leaves.push_back(x);
            c_.add(leaves[0], leaves[1]);
          }
          break;
        case PortKind::Tail:
          if (!attach_checked(p)) attach_any(p.at[0], p.item);
          break;
        case PortKind::Any:
        case PortKind::Fan:
          attach_any(p.at[0], p.item);
          break;
      }
      p.capacity = 0;
    }
  }

  void internal_edge(std::size_t item) {
    const VertexSet& mem = comps_.members[item];
    if (comps_.shape[item] == Shape::Square) {
      const Vertex u = mem[0];
      for (Vertex x : mem)
        if (x != u && !g_.has_edge(u, x)) c_.add(u, x);
      return;
    }
    // Path u-v-w-x: join an end to the far inner vertex.
    Vertex end = mem[0];
    for (Vertex x : mem)
      if (g_.degree(x) == 1) {
        end = x;
        break;
      }
    const Vertex inner = g_.neighbors(end).front();
    c_.add(end, other_neighbor(g_, inner, end));
  }

  // Candidate partners: other components first, then degree >= 2, then id.
  std::vector<Vertex> candidates(std::size_t item) const {
    std::vector<Vertex> out(g_.vertex_count());
    std::iota(out.begin(), out.end(), 0);
    const Graph& g = c_.graph();
    std::stable_sort(out.begin(), out.end(), [&](Vertex a, Vertex b) {
      auto key = [&](Vertex x) { return std::pair(comps_.id[x] == item, g.degree(x) < 2); };
      return key(a) < key(b);
    });
    return out;
  }

  bool attach_checked(const Port& p) {
    for (Vertex y : candidates(p.item)) {
      for (Vertex x : p.at) {
        if (!c_.can_add(x, y)) continue;
        bool ok = true;
        for (Vertex w : p.watch) ok = ok && ok_with(c_.graph(), w, Edge(x, y));
        if (ok) {
          c_.add(x, y);
          return true;
        }
      }
    }
    return false;
  }

  void attach_any(Vertex x, std::size_t item) {
    for (Vertex y : candidates(item)) {
      if (c_.can_add(x, y)) {
        c_.add(x, y);
        return;
      }
    }
  }

  void finish_edge_hub(Port& p) {
    const Vertex u = p.watch[0], v = p.watch[1];
    if (p.capacity == 2) {
      // Lone isolated edge: take over an existing pair a-b as u-a, u-b.
      for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const Pair pr = pairs_[i];
        if (comps_.shape[comps_.id[pr.a]] == Shape::Isolated &&
            comps_.shape[comps_.id[pr.b]] == Shape::Isolated)
          continue;
        if (!c_.can_add(u, pr.a) || !c_.can_add(u, pr.b)) continue;
        c_.remove(pr.a, pr.b);
        c_.add(u, pr.a);
        c_.add(u, pr.b);
        pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(i));
        return;
      }
      for (Vertex y : candidates(p.item)) {
        if (y != u && y != v) {
          c_.add(u, y);
          c_.add(v, y);
          return;
        }
      }
      return;
    }
    for (Vertex y : candidates(p.item)) {
      if (!c_.can_add(u, y)) continue;
      if (ok_with(c_.graph(), u, Edge(u, y)) && ok_with(c_.graph(), v, Edge(u, y))) {
        c_.add(u, y);
        return;
      }
    }
    if (p.absorbed) {
      c_.add(v, *p.absorbed);
      return;
    }
    attach_any(u, p.item);
  }

  void place_isolated() {
    while (!iso_.empty()) {
      const Vertex z = iso_.front();
      bool placed = false;
      const Graph& g = c_.graph();
      for (Vertex x = 0; x < g.vertex_count() && !placed; ++x) {
        if (g.degree(x) >= 2 && c_.can_add(z, x) && ok_with(g, z, Edge(z, x))) {
          c_.add(z, x);
          placed = true;
        }
      }
      if (placed) {
        iso_.erase(iso_.begin());
        continue;
      }
      if (iso_.size() >= 3) {
        c_.add(iso_[0], iso_[1]);
        c_.add(iso_[0], iso_[2]);
        c_.add(iso_[1], iso_[2]);
        iso_.erase(iso_.begin(), iso_.begin() + 3);
        continue;
      }
      attach_any(z, comps_.id[z]);
      iso_.erase(iso_.begin());
    }
  }

  const Graph& g_;
  const DeficitAssignment& da_;
  Components comps_;
  std::uint64_t seed_;
  Completion c_;
  std::vector<char> deficient_;
  std::vector<Vertex> iso_;
  std::vector<Port> ports_;
  std::vector<Pair> pairs_;
  std::size_t total_ports_ = 0;
};

// ---------------------------------------------------------------------------
// Strong matching phase. A deficit of d at vertex a asks for d edges at a;
// such an edge helps only the original neighbors of a, so its partner must be
// new to each of them. Two deficit vertices share an edge when the partner
// condition holds both ways; a maximum b-matching picks the most shared edges.

class StrongMatcher {
 public:
  StrongMatcher(const Graph& g, const DeficitAssignment& da, MatchingMode mode,
                std::uint64_t seed)
      : g_(g), da_(da), mode_(mode), seed_(seed), comps_(classify_components(g)), c_(g),
        deficient_(g.vertex_count(), 0), known_(g.vertex_count()) {
    for (Vertex v : residual(g, k21).deficient) {
      deficient_[v] = 1;
      auto s = sharers(g, v, 1);
      if (!s.empty()) known_[v] = s.front();
    }
  }

  Completion build() {
    VertexSet slots;
    std::vector<VertexSet> at;
    std::vector<int> cap;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (!da_.deficit[v]) continue;
      slots.push_back(v);
      cap.push_back(da_.deficit[v]);
      // A leaf-fan deficit may also sit at a leaf of the fan center.
      VertexSet pos{v};
      if (da_.rule[v] == DeficitRule::StrongLeafFan)
        for (Vertex c : g_.neighbors(v))
          if (deficient_[c])
            for (Vertex x : g_.neighbors(c))
              if (g_.degree(x) == 1) pos.push_back(x);
      at.push_back(std::move(pos));
    }
    std::vector<Edge> allowed, realized;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      for (std::size_t j = i + 1; j < slots.size(); ++j) {
        if (auto e = joint(at[i], at[j])) {
          allowed.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
          realized.push_back(*e);
        }
      }
    }
    const auto chosen = b_matching(cap, allowed, mode_ == MatchingMode::Exact, seed_);
    for (std::size_t t : chosen) {
      const Edge e = realized[t];
      if (!c_.can_add(e.u, e.v)) continue;
      c_.add(e.u, e.v);
      --cap[allowed[t].u];
      --cap[allowed[t].v];
    }
    for (std::size_t i = 0; i < slots.size(); ++i)
      for (; cap[i] > 0; --cap[i])
        if (auto y = partner(slots[i])) c_.add(slots[i], *y);
    return std::move(c_);
  }

 private:
  // Whether an edge a-b hands b to every deficient original neighbor of a.
  bool brings(Vertex a, Vertex b) const {
    for (Vertex v : g_.neighbors(a))
      if (deficient_[v] && (b == v || known_[v] == b)) return false;
    return true;
  }

  std::optional<Edge> joint(const VertexSet& p, const VertexSet& q) const {
    for (Vertex x : p)
      for (Vertex y : q)
        if (c_.can_add(x, y) && brings(x, y) && brings(y, x)) return Edge(x, y);
    return std::nullopt;
  }

  // Lone deficit: lowest eligible vertex, other components first.
  std::optional<Vertex> partner(Vertex a) const {
    std::optional<Vertex> fallback;
    for (Vertex y = 0; y < g_.vertex_count(); ++y) {
      if (!c_.can_add(a, y) || !brings(a, y)) continue;
      if (comps_.id[y] != comps_.id[a]) return y;
      if (!fallback) fallback = y;
    }
    return fallback;
  }

  const Graph& g_;
  const DeficitAssignment& da_;
  MatchingMode mode_;
  std::uint64_t seed_;
  Components comps_;
  Completion c_;
  std::vector<char> deficient_;
  std::vector<std::optional<Vertex>> known_;
};

}  // namespace

std::string_view deficit_rule_name(DeficitRule rule) noexcept {
  switch (rule) {
    case DeficitRule::None: return "none";
    case DeficitRule::IsolatedEdge: return "isolated-edge";
    case DeficitRule::IsolatedPath3: return "isolated-path3";
    case DeficitRule::IsolatedPath4: return "isolated-path4";
    case DeficitRule::PathWithAttachment: return "path-with-attachment";
    case DeficitRule::IsolatedStar: return "isolated-star";
    case DeficitRule::IsolatedSquare: return "isolated-square";
    case DeficitRule::SquareWithOutEdges: return "square-with-out-edges";
    case DeficitRule::MultiSquare: return "multi-square";
    case DeficitRule::LeafFan: return "leaf-fan";
    case DeficitRule::StrongIsolatedEdge: return "strong-isolated-edge";
    case DeficitRule::StrongIsolatedPath4: return "strong-isolated-path4";
    case DeficitRule::StrongIsolatedSquare: return "strong-isolated-square";
    case DeficitRule::StrongSquareWithOutEdges: return "strong-square-with-out-edges";
    case DeficitRule::StrongMultiSquare: return "strong-multi-square";
    case DeficitRule::StrongPath3: return "strong-path3";
    case DeficitRule::StrongStar: return "strong-star";
    case DeficitRule::StrongPathPrefix: return "strong-path-prefix";
    case DeficitRule::StrongPathPrefixBranch: return "strong-path-prefix-branch";
    case DeficitRule::StrongLeafFan: return "strong-leaf-fan";
    case DeficitRule::Fallback: return "fallback";
  }
  return "?";
}

VertexSet DeficitAssignment::vertices() const {
  VertexSet out;
  for (Vertex v = 0; v < deficit.size(); ++v)
    if (deficit[v]) out.push_back(v);
  return out;
}

DeficitAssignment assign_deficits_weak(const Graph& g, std::span<const Vertex> scan_order) {
  return Assigner(g, Mode::Weak).run(scan_order);
}

DeficitAssignment assign_deficits_strong(const Graph& g, std::span<const Vertex> scan_order) {
  VertexSet isolated;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) isolated.push_back(v);
  if (!isolated.empty())
    throw Error(Errc::IsolatedVertex, "strong (2,1)-anonymity is unreachable with isolated vertices",
                isolated);
  return Assigner(g, Mode::Strong).run(scan_order);
}

EdgePlan anonymize_weak_21(const Graph& g, std::uint64_t seed) {
  if (is_kl_anonymous(g, k21)) return Completion(g).finish(Mode::Weak);
  if (g.vertex_count() < 3) throw Error(Errc::TooSmall, "fewer than three vertices");
  const DeficitAssignment da = assign_deficits_weak(g);
  Completion c = WeakMatcher(g, da, seed).build();
  repair(c, Mode::Weak, g);
  return c.finish(Mode::Weak);
}

EdgePlan anonymize_strong_21(const Graph& g, MatchingMode mode, std::uint64_t seed) {
  const DeficitAssignment da = assign_deficits_strong(g);
  Completion c = StrongMatcher(g, da, mode, seed).build();
  repair(c, Mode::Strong, g);
  return c.finish(Mode::Strong);
}

}  // namespace kanon
