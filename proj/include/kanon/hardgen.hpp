#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kanon/graph.hpp"

namespace kanon {

using Triple = std::array<std::size_t, 3>;

// 1-in-3 satisfiability: assign booleans so that every triple holds exactly
// one true variable.
struct OneInThreeInstance {
  std::size_t variables = 0;
  std::vector<Triple> triples;
};

// Each variable in exactly 3 triples, no two triples sharing more than one
// variable, and an even number of triples.
bool is_normalized(const OneInThreeInstance& inst);

// Backtracking search; returns a satisfying assignment if one exists.
std::optional<std::vector<bool>> solve_one_in_three(const OneInThreeInstance& inst);

// Rewrites any instance into an equisatisfiable normalized one: occurrence
// splitting, equality gadgets, padding triples, nine equated copies and a
// final doubling. Variables that occur in no triple are dropped.
OneInThreeInstance normalize_instance(const OneInThreeInstance& raw);

struct ReductionGraph {
  Graph graph;
  std::size_t m = 0;          // triples / 6
  std::size_t k = 6;          // U-vertices start with exactly k sharers
  VertexSet u_vertices;       // one per triple
  VertexSet v_vertices;       // one per variable
};

// Bipartite triple/variable graph with pendant gadgets so that every triple
// vertex has exactly k sharers (ell = 1) and every other vertex at least k+1.
// Throws NotNormalized / BadTripleCount / BadParams (k < 6).
ReductionGraph reduction_graph(const OneInThreeInstance& inst, std::size_t k = 6);

// Uniformly sampled normalized instance with the given triple count (a
// multiple of 6, at least 12); rejection-samples the incidence structure.
OneInThreeInstance random_normalized_instance(std::size_t triples, std::uint64_t seed);

// Raw instance with `triples` random triples over `variables` variables.
OneInThreeInstance random_instance(std::size_t variables, std::size_t triples,
                                   std::uint64_t seed);

// G(n, p) sample; pairs are visited in lexicographic order.
Graph random_graph(std::size_t n, double edge_prob, std::uint64_t seed);

// Key-value sidecar text for a reduction graph (m, k, U and V lists).
std::string reduction_metadata(const ReductionGraph& rg);

}  // namespace kanon
