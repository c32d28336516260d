#pragma once

#include <span>
#include <vector>

#include "kanon/anonymity.hpp"
#include "kanon/plan.hpp"

namespace kanon::detail {

// Sharer counts and residuals of a graph under construction, kept up to
// date as edges are added. An edge set can be scored without applying it;
// only vertices whose sharer count can change are recomputed.
class ResidualTracker {
 public:
  ResidualTracker(Mode mode, const Graph& original, const AnonParams& p);

  const Graph& graph() const { return current_; }
  const Graph& original() const { return original_; }
  Mode mode() const { return mode_; }
  std::size_t total() const { return total_; }
  std::size_t residual(Vertex v) const { return residual_[v]; }
  std::size_t sharer_count(Vertex v) const { return count_[v]; }
  VertexSet deficient() const;

  // Residual reduction that adding `extra` would bring. The edges must be
  // distinct and missing from the current graph.
  std::size_t gain(std::span<const Edge> extra);

  void add(std::span<const Edge> extra);

  // Vertices u != v sharing at least ell neighbors with v (strong: ell of
  // v's original neighbors), in the current graph plus `extra`.
  VertexSet sharers_of(Vertex v, std::span<const Edge> extra = {});

 private:
  template <typename Fn>
  void each_neighbor(Vertex x, std::span<const Edge> extra, Fn&& fn) const {
    for (Vertex y : current_.neighbors(x)) fn(y);
    for (const Edge& e : extra) {
      if (e.u == x) fn(e.v);
      else if (e.v == x) fn(e.u);
    }
  }

  std::size_t count_with(Vertex x, std::span<const Edge> extra);
  VertexSet affected(std::span<const Edge> extra) const;
  std::size_t residual_for(std::size_t count) const { return count >= p_.k ? 0 : p_.k - count; }

  Mode mode_;
  const Graph& original_;
  Graph current_;
  AnonParams p_;
  std::vector<std::size_t> count_;
  std::vector<std::size_t> residual_;
  std::size_t total_ = 0;
  std::vector<std::size_t> scratch_;
  std::vector<Vertex> touched_;
};

// Appends one trace step and the step's edges to the plan.
void record_step(EdgePlan& plan, std::span<const Edge> edges, std::size_t before,
                 std::size_t after);

}  // namespace kanon::detail
