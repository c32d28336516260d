#include "tracker.hpp"

#include <algorithm>

namespace kanon::detail {

ResidualTracker::ResidualTracker(Mode mode, const Graph& original, const AnonParams& p)
    : mode_(mode), original_(original), current_(original), p_(p) {
  p_.validate();
  const std::size_t n = original.vertex_count();
  count_.assign(n, 0);
  residual_.assign(n, 0);
  scratch_.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    count_[v] = count_with(v, {});
    residual_[v] = residual_for(count_[v]);
    total_ += residual_[v];
  }
}

VertexSet ResidualTracker::deficient() const {
  VertexSet out;
  for (Vertex v = 0; v < residual_.size(); ++v)
    if (residual_[v] > 0) out.push_back(v);
  return out;
}

VertexSet ResidualTracker::sharers_of(Vertex v, std::span<const Edge> extra) {
  VertexSet out;
  auto visit = [&](Vertex w) {
    each_neighbor(w, extra, [&](Vertex u) {
      if (u != v && scratch_[u]++ == 0) touched_.push_back(u);
    });
  };
  if (mode_ == Mode::Weak) {
    each_neighbor(v, extra, visit);
  } else {
    for (Vertex w : original_.neighbors(v)) visit(w);
  }
  for (Vertex u : touched_) {
    if (scratch_[u] >= p_.ell) out.push_back(u);
    scratch_[u] = 0;
  }
  touched_.clear();
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ResidualTracker::count_with(Vertex x, std::span<const Edge> extra) {
  return sharers_of(x, extra).size();
}

VertexSet ResidualTracker::affected(std::span<const Edge> extra) const {
  VertexSet out;
  for (const Edge& e : extra) {
    for (Vertex a : {e.u, e.v}) {
      if (mode_ == Mode::Weak) {
        // a itself gains a 2-path through the new neighbor; the old and new
        // neighbors of a gain one through a.
        out.push_back(a);
        each_neighbor(a, extra, [&](Vertex y) { out.push_back(y); });
      } else {
        // Only the original neighbors of an endpoint can gain a sharer.
        for (Vertex y : original_.neighbors(a)) out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t ResidualTracker::gain(std::span<const Edge> extra) {
  std::size_t g = 0;
  for (Vertex x : affected(extra)) {
    if (residual_[x] == 0) continue;
    const std::size_t after = residual_for(count_with(x, extra));
    g += residual_[x] - std::min(after, residual_[x]);
  }
  return g;
}

void ResidualTracker::add(std::span<const Edge> extra) {
  const VertexSet touched = affected(extra);
  for (const Edge& e : extra) current_.add_edge(e);
  for (Vertex x : touched) {
    total_ -= residual_[x];
    count_[x] = count_with(x, {});
    residual_[x] = residual_for(count_[x]);
    total_ += residual_[x];
  }
}

void record_step(EdgePlan& plan, std::span<const Edge> edges, std::size_t before,
                 std::size_t after) {
  PlanStep step;
  step.edges.assign(edges.begin(), edges.end());
  step.residual_before = before;
  step.residual_after = after;
  plan.added_edges.insert(plan.added_edges.end(), edges.begin(), edges.end());
  plan.trace.push_back(std::move(step));
}

}  // namespace kanon::detail
