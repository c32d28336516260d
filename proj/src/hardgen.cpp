#include "kanon/hardgen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "kanon/rng.hpp"

namespace kanon {

namespace {

std::vector<std::size_t> occurrence_counts(const OneInThreeInstance& inst) {
  std::vector<std::size_t> count(inst.variables, 0);
  for (const Triple& t : inst.triples)
    for (std::size_t x : t) ++count[x];
  return count;
}

class OneInThreeSolver {
 public:
  explicit OneInThreeSolver(const OneInThreeInstance& inst)
      : inst_(inst), value_(inst.variables, -1), occurs_(inst.variables) {
    for (std::size_t t = 0; t < inst.triples.size(); ++t)
      for (std::size_t x : inst.triples[t]) occurs_[x].push_back(t);
  }

  std::optional<std::vector<bool>> solve() {
    if (!search()) return std::nullopt;
    std::vector<bool> out(inst_.variables);
    for (std::size_t x = 0; x < inst_.variables; ++x) out[x] = value_[x] == 1;
    return out;
  }

 private:
  // Returns false on conflict; records assignments in trail_.
  bool assign(std::size_t x, int v) {
    if (value_[x] != -1) return value_[x] == v;
    value_[x] = v;
    trail_.push_back(x);
    for (std::size_t t : occurs_[x]) {
      if (!propagate(t)) return false;
    }
    return true;
  }

  bool propagate(std::size_t t) {
    const Triple& tr = inst_.triples[t];
    int ones = 0;
    int unknown = 0;
    for (std::size_t x : tr) {
      if (value_[x] == 1) ++ones;
      if (value_[x] == -1) ++unknown;
    }
    if (ones > 1) return false;
    if (ones == 1) {
      for (std::size_t x : tr)
        if (value_[x] == -1 && !assign(x, 0)) return false;
      return true;
    }
    if (unknown == 0) return false;
    if (unknown == 1) {
      for (std::size_t x : tr)
        if (value_[x] == -1) return assign(x, 1);
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  bool search() {
    // Branch on the open triple with the fewest unassigned variables.
    std::size_t best = inst_.triples.size();
    int best_unknown = 4;
    for (std::size_t t = 0; t < inst_.triples.size(); ++t) {
      int ones = 0;
      int unknown = 0;
      for (std::size_t x : inst_.triples[t]) {
        if (value_[x] == 1) ++ones;
        if (value_[x] == -1) ++unknown;
      }
      if (ones == 0 && unknown < best_unknown) {
        best = t;
        best_unknown = unknown;
      }
    }
    if (best == inst_.triples.size()) return true;
    for (std::size_t x : inst_.triples[best]) {
      if (value_[x] != -1) continue;
      std::size_t mark = trail_.size();
      if (assign(x, 1) && search()) return true;
      undo(mark);
    }
    return false;
  }

  const OneInThreeInstance& inst_;
  std::vector<int> value_;
  std::vector<std::vector<std::size_t>> occurs_;
  std::vector<std::size_t> trail_;
};

}  // namespace

bool is_normalized(const OneInThreeInstance& inst) {
  if (inst.triples.size() % 2 != 0) return false;
  for (const Triple& t : inst.triples) {
    for (std::size_t x : t)
      if (x >= inst.variables) return false;
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) return false;
  }
  auto count = occurrence_counts(inst);
  if (std::any_of(count.begin(), count.end(), [](std::size_t c) { return c != 3; })) return false;
  std::map<std::pair<std::size_t, std::size_t>, int> pair_uses;
  for (const Triple& t : inst.triples) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        auto key = std::minmax(t[i], t[j]);
        if (++pair_uses[{key.first, key.second}] > 1) return false;
      }
    }
  }
  return true;
}

std::optional<std::vector<bool>> solve_one_in_three(const OneInThreeInstance& inst) {
  return OneInThreeSolver(inst).solve();
}

OneInThreeInstance normalize_instance(const OneInThreeInstance& raw) {
  OneInThreeInstance base;
  std::size_t next = 0;
  auto fresh = [&] { return next++; };

  // Every occurrence gets its own variable.
  std::vector<std::vector<std::size_t>> copies(raw.variables);
  for (const Triple& t : raw.triples) {
    Triple renamed{};
    for (int i = 0; i < 3; ++i) {
      renamed[i] = fresh();
      copies[t[i]].push_back(renamed[i]);
    }
    base.triples.push_back(renamed);
  }

  // Chain consecutive copies with the four-triple equality gadget.
  for (const auto& chain : copies) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      std::size_t u = fresh(), v = fresh(), u2 = fresh(), v2 = fresh(), w = fresh();
      base.triples.push_back({chain[i], u, v});
      base.triples.push_back({chain[i + 1], u2, v2});
      base.triples.push_back({u, u2, w});
      base.triples.push_back({v, v2, w});
    }
  }
  base.variables = next;

  // Pad every variable up to three occurrences with always-satisfiable
  // triples (y, z, t) on fresh z and t.
  std::vector<char> is_z, is_t;
  auto count = occurrence_counts(base);
  const std::size_t pre_pad = base.variables;
  for (std::size_t y = 0; y < pre_pad; ++y) {
    for (std::size_t c = count[y]; c < 3; ++c) {
      std::size_t z = next++;
      std::size_t t = next++;
      base.triples.push_back({y, z, t});
    }
  }
  base.variables = next;
  is_z.assign(next, 0);
  is_t.assign(next, 0);
  for (std::size_t x = pre_pad; x < next; ++x) ((x - pre_pad) % 2 == 0 ? is_z : is_t)[x] = 1;

  // Nine copies (i, j); z variables are shared among copies with equal i,
  // t variables among copies with equal j.
  OneInThreeInstance nine;
  std::size_t id = 0;
  std::vector<std::array<std::size_t, 3>> z_ids(base.variables), t_ids(base.variables);
  for (std::size_t x = 0; x < base.variables; ++x) {
    if (is_z[x])
      for (auto& slot : z_ids[x]) slot = id++;
    if (is_t[x])
      for (auto& slot : t_ids[x]) slot = id++;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      std::vector<std::size_t> map(base.variables);
      for (std::size_t x = 0; x < base.variables; ++x) {
        if (is_z[x]) map[x] = z_ids[x][i];
        else if (is_t[x]) map[x] = t_ids[x][j];
        else map[x] = id++;
      }
      for (const Triple& t : base.triples) nine.triples.push_back({map[t[0]], map[t[1]], map[t[2]]});
    }
  }
  nine.variables = id;

  // Two disjoint copies make the triple count even.
  OneInThreeInstance out;
  out.variables = 2 * nine.variables;
  out.triples = nine.triples;
  for (const Triple& t : nine.triples) {
    out.triples.push_back({t[0] + nine.variables, t[1] + nine.variables, t[2] + nine.variables});
  }
  return out;
}

ReductionGraph reduction_graph(const OneInThreeInstance& inst, std::size_t k) {
  if (k < 6) throw Error(Errc::BadParams, "reduction needs k >= 6");
  if (!is_normalized(inst)) throw Error(Errc::NotNormalized, "instance is not normalized");
  const std::size_t t = inst.triples.size();
  if (t == 0 || t % 6 != 0) {
    throw Error(Errc::BadTripleCount,
                "triple count " + std::to_string(t) + " is not a positive multiple of 6");
  }
  const std::size_t pendants = k - 1;  // k-2 leaves plus the gadget vertex
  const std::size_t attach = k - 6;    // gadget vertex neighbors inside the clique
  const std::size_t clique = attach > 0 ? k + 2 : 0;
  const std::size_t n = t + inst.variables + t * pendants + clique;

  ReductionGraph rg;
  rg.graph = Graph(n);
  rg.m = t / 6;
  rg.k = k;
  const auto clique_base = static_cast<Vertex>(n - clique);
  for (Vertex a = 0; a < clique; ++a)
    for (Vertex b = a + 1; b < clique; ++b) rg.graph.add_edge(clique_base + a, clique_base + b);

  for (std::size_t i = 0; i < t; ++i) {
    const auto u = static_cast<Vertex>(i);
    rg.u_vertices.push_back(u);
    for (std::size_t x : inst.triples[i]) rg.graph.add_edge(u, static_cast<Vertex>(t + x));
    const auto first = static_cast<Vertex>(t + inst.variables + i * pendants);
    for (Vertex p = 0; p < pendants; ++p) rg.graph.add_edge(u, first + p);
    const Vertex gadget = first + static_cast<Vertex>(pendants - 1);
    for (Vertex c = 0; c < attach; ++c) rg.graph.add_edge(gadget, clique_base + c);
  }
  for (std::size_t x = 0; x < inst.variables; ++x) rg.v_vertices.push_back(static_cast<Vertex>(t + x));
  return rg;
}

OneInThreeInstance random_normalized_instance(std::size_t triples, std::uint64_t seed) {
  if (triples < 12 || triples % 6 != 0) {
    throw Error(Errc::BadTripleCount, "normalized instances need a multiple of 6, at least 12");
  }
  Rng rng(seed);
  const std::size_t vars = triples;  // 3 occurrences each
  for (;;) {
    // Randomized greedy fill with restarts.
    std::vector<std::size_t> capacity(vars, 3);
    std::vector<std::vector<char>> together(vars, std::vector<char>(vars, 0));
    OneInThreeInstance inst;
    inst.variables = vars;
    bool ok = true;
    for (std::size_t i = 0; i < triples && ok; ++i) {
      Triple tr{};
      for (int slot = 0; slot < 3 && ok; ++slot) {
        std::vector<std::size_t> options;
        for (std::size_t x = 0; x < vars; ++x) {
          if (capacity[x] == 0) continue;
          bool clash = false;
          for (int s = 0; s < slot; ++s) clash |= (tr[s] == x) || together[tr[s]][x];
          if (!clash) options.push_back(x);
        }
        if (options.empty()) {
          ok = false;
          break;
        }
        // Prefer variables with the most remaining capacity to avoid dead ends.
        std::size_t most = 0;
        for (std::size_t x : options) most = std::max(most, capacity[x]);
        std::erase_if(options, [&](std::size_t x) { return capacity[x] != most; });
        tr[slot] = options[rng.below(options.size())];
      }
      if (!ok) break;
      for (int a = 0; a < 3; ++a) {
        --capacity[tr[a]];
        for (int b = 0; b < 3; ++b)
          if (a != b) together[tr[a]][tr[b]] = 1;
      }
      inst.triples.push_back(tr);
    }
    if (ok && is_normalized(inst)) return inst;
  }
}

OneInThreeInstance random_instance(std::size_t variables, std::size_t triples, std::uint64_t seed) {
  if (variables < 3) throw Error(Errc::BadParams, "need at least 3 variables");
  Rng rng(seed);
  OneInThreeInstance inst;
  inst.variables = variables;
  for (std::size_t i = 0; i < triples; ++i) {
    Triple t{};
    t[0] = rng.below(variables);
    do t[1] = rng.below(variables); while (t[1] == t[0]);
    do t[2] = rng.below(variables); while (t[2] == t[0] || t[2] == t[1]);
    inst.triples.push_back(t);
  }
  return inst;
}

Graph random_graph(std::size_t n, double edge_prob, std::uint64_t seed) {
  Rng rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.unit() < edge_prob) g.add_edge(u, v);
  return g;
}

std::string reduction_metadata(const ReductionGraph& rg) {
  std::ostringstream out;
  out << "m=" << rg.m << '\n';
  out << "k=" << rg.k << '\n';
  out << "triples=" << rg.u_vertices.size() << '\n';
  out << "u_vertices=";
  for (std::size_t i = 0; i < rg.u_vertices.size(); ++i) out << (i ? " " : "") << rg.u_vertices[i];
  out << '\n';
  out << "v_vertices=";
  for (std::size_t i = 0; i < rg.v_vertices.size(); ++i) out << (i ? " " : "") << rg.v_vertices[i];
  out << '\n';
  return out.str();
}

}  // namespace kanon
