#include "kanon/anonymity.hpp"

#include <algorithm>
#include <string>

namespace kanon {

std::string_view mode_name(Mode mode) noexcept {
  return mode == Mode::Weak ? "weak" : "strong";
}

void AnonParams::validate() const {
  if (k < 1 || ell < 1) {
    throw Error(Errc::BadParams, "k and ell must be positive (k=" + std::to_string(k) +
                                     ", ell=" + std::to_string(ell) + ")");
  }
}

namespace {

// Counts, for every u, how many vertices of `through` are adjacent to u in
// `current`; `through` is a neighbor list. Touched vertices are recorded so
// the scratch buffer can be reset in time proportional to the work done.
class PathCounter {
 public:
  explicit PathCounter(std::size_t n) : count_(n, 0) {}

  template <typename Fn>
  void for_each_sharer(const Graph& current, const std::vector<Vertex>& through, Vertex self,
                       std::size_t ell, Fn&& fn) {
    for (Vertex w : through) {
      for (Vertex u : current.neighbors(w)) {
        if (u == self) continue;
        if (count_[u]++ == 0) touched_.push_back(u);
      }
    }
    for (Vertex u : touched_) {
      if (count_[u] >= ell) fn(u);
      count_[u] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<std::size_t> count_;
  std::vector<Vertex> touched_;
};

ResidualReport build_report(const Graph& original, const Graph& current, const AnonParams& p) {
  p.validate();
  const std::size_t n = current.vertex_count();
  ResidualReport r;
  r.sharer_count.assign(n, 0);
  r.residual.assign(n, 0);
  PathCounter counter(n);
  for (Vertex v = 0; v < n; ++v) {
    std::size_t c = 0;
    counter.for_each_sharer(current, original.neighbors(v), v, p.ell, [&](Vertex) { ++c; });
    r.sharer_count[v] = c;
    r.residual[v] = c >= p.k ? 0 : p.k - c;
    r.total += r.residual[v];
    if (r.residual[v] > 0) r.deficient.push_back(v);
  }
  return r;
}

void check_same_size(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count()) {
    throw Error(Errc::SizeMismatch, "graphs have " + std::to_string(a.vertex_count()) + " and " +
                                        std::to_string(b.vertex_count()) + " vertices");
  }
}

}  // namespace

VertexSet sharers(const Graph& g, Vertex v, std::size_t ell) {
  VertexSet out;
  PathCounter counter(g.vertex_count());
  counter.for_each_sharer(g, g.neighbors(v), v, ell, [&](Vertex u) { out.push_back(u); });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_kl_anonymous(const Graph& g, const AnonParams& p) {
  p.validate();
  PathCounter counter(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::size_t c = 0;
    counter.for_each_sharer(g, g.neighbors(v), v, p.ell, [&](Vertex) { ++c; });
    if (c < p.k) return false;
  }
  return true;
}

ResidualReport residual(const Graph& g, const AnonParams& p) { return build_report(g, g, p); }

VertexSet strong_sharers(const Graph& original, const Graph& current, Vertex v, std::size_t ell) {
  check_same_size(original, current);
  VertexSet out;
  PathCounter counter(current.vertex_count());
  counter.for_each_sharer(current, original.neighbors(v), v, ell,
                          [&](Vertex u) { out.push_back(u); });
  std::sort(out.begin(), out.end());
  return out;
}

ResidualReport strong_residual(const Graph& original, const Graph& current, const AnonParams& p) {
  check_same_size(original, current);
  return build_report(original, current, p);
}

bool is_strong_transformation(const Graph& original, const Graph& transformed,
                              const AnonParams& p) {
  check_same_size(original, transformed);
  if (!is_edge_subset(original, transformed)) {
    throw Error(Errc::NotSuperset, "transformed graph drops edges of the original");
  }
  return strong_residual(original, transformed, p).total == 0;
}

ResidualReport residual_for(Mode mode, const Graph& original, const Graph& current,
                            const AnonParams& p) {
  return mode == Mode::Weak ? residual(current, p) : strong_residual(original, current, p);
}

std::string_view tag21_name(Tag21 tag) noexcept {
  switch (tag) {
    case Tag21::Triangle: return "triangle";
    case Tag21::Deg3Neighbor: return "deg3_neighbor";
    case Tag21::MiddleOf5Path: return "middle_of_5_path";
    case Tag21::None: return "none";
  }
  return "none";
}

std::vector<Tag21> check_21_characterization(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Tag21> tags(n, Tag21::None);
  for (Vertex v = 0; v < n; ++v) {
    const auto& nv = g.neighbors(v);
    bool triangle = false;
    for (std::size_t i = 0; i < nv.size() && !triangle; ++i)
      for (std::size_t j = i + 1; j < nv.size() && !triangle; ++j)
        triangle = g.has_edge(nv[i], nv[j]);
    if (triangle) {
      tags[v] = Tag21::Triangle;
      continue;
    }
    if (std::any_of(nv.begin(), nv.end(), [&](Vertex w) { return g.degree(w) >= 3; })) {
      tags[v] = Tag21::Deg3Neighbor;
      continue;
    }
    // No triangle at v, so the far ends a, d differ from b, c automatically;
    // only a != d needs checking.
    bool path5 = false;
    for (std::size_t i = 0; i < nv.size() && !path5; ++i) {
      for (std::size_t j = 0; j < nv.size() && !path5; ++j) {
        if (i == j) continue;
        for (Vertex a : g.neighbors(nv[i])) {
          if (a == v) continue;
          for (Vertex d : g.neighbors(nv[j])) {
            if (d != v && d != a) {
              path5 = true;
              break;
            }
          }
          if (path5) break;
        }
      }
    }
    if (path5) tags[v] = Tag21::MiddleOf5Path;
  }
  return tags;
}

}  // namespace kanon
