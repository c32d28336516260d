#pragma once

#include <cstdint>

#include "kanon/plan.hpp"

namespace kanon {

// (k,1)-anonymization heuristics. Each plan carries one trace step per
// iteration; every step strictly lowers the residual.

// Repeatedly joins a neighbor of a random deficient vertex u to a random
// vertex outside u's 2-neighborhood. When only isolated deficient vertices
// are left, each is joined to a (k+1)-clique, formed on the k+1 vertices of
// highest degree the first time it is needed. Throws TooSmall if n < k+1.
EdgePlan weak_any(const Graph& g, std::size_t k, std::uint64_t seed = 0);

// Same walk with sharers counted against original neighborhoods. Throws
// IsolatedVertex.
EdgePlan strong_any(const Graph& g, std::size_t k, std::uint64_t seed = 0);

// Forms a (k+1)-clique on the highest-degree vertices, then adds whole
// triangles, each maximizing the residual drop. Triangles are drawn from a
// clique vertex plus two vertices that are deficient, next to a deficient
// vertex, or in the clique. The seed is accepted for symmetry with the
// other entry points; the algorithm itself is deterministic. Throws TooSmall.
EdgePlan weak_greedy(const Graph& g, std::size_t k, std::uint64_t seed = 0);

// Adds the single edge with the largest strong-residual drop until none is
// left; ties go to the lexicographically smallest edge. Throws
// IsolatedVertex, or Stuck if no edge helps.
EdgePlan strong_greedy(const Graph& g, std::size_t k);

}  // namespace kanon
