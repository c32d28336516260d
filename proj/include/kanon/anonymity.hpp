#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "kanon/graph.hpp"

namespace kanon {

enum class Mode { Weak, Strong };

std::string_view mode_name(Mode mode) noexcept;

// Target anonymity level: every vertex needs at least `k` other vertices that
// share at least `ell` of its neighbors.
struct AnonParams {
  std::size_t k = 1;
  std::size_t ell = 1;

  // Throws BadParams unless k >= 1 and ell >= 1.
  void validate() const;
};

struct ResidualReport {
  std::vector<std::size_t> sharer_count;  // k'(v), uncapped
  std::vector<std::size_t> residual;      // max(k - k'(v), 0)
  std::size_t total = 0;
  VertexSet deficient;
};

// { u != v : |N(u) ∩ N(v)| >= ell }
VertexSet sharers(const Graph& g, Vertex v, std::size_t ell);

bool is_kl_anonymous(const Graph& g, const AnonParams& p);
ResidualReport residual(const Graph& g, const AnonParams& p);

// Sharers of v in the strong sense: u != v with |N_original(v) ∩ N_current(u)| >= ell.
VertexSet strong_sharers(const Graph& original, const Graph& current, Vertex v, std::size_t ell);

// Residual measured against the original neighborhoods. Throws SizeMismatch
// when the vertex counts differ; does not check the superset relation.
ResidualReport strong_residual(const Graph& original, const Graph& current, const AnonParams& p);

// Throws SizeMismatch / NotSuperset when `transformed` is not an edge
// superset of `original` over the same vertices.
bool is_strong_transformation(const Graph& original, const Graph& transformed,
                              const AnonParams& p);

// Residual in either mode; for Weak the `original` graph is ignored.
ResidualReport residual_for(Mode mode, const Graph& original, const Graph& current,
                            const AnonParams& p);

// Characterization of (2,1)-anonymous vertices.
enum class Tag21 { Triangle, Deg3Neighbor, MiddleOf5Path, None };

std::string_view tag21_name(Tag21 tag) noexcept;

// First matching condition per vertex: in a triangle, adjacent to a vertex of
// degree >= 3, or the middle of a path a-b-v-c-d on five distinct vertices.
std::vector<Tag21> check_21_characterization(const Graph& g);

}  // namespace kanon
