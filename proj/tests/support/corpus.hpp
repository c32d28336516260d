#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kanon/graph.hpp"

namespace kanon::testing {

// Every graph on exactly n vertices up to isomorphism (n <= 8), built by
// vertex extension and deduplicated by a degree-refined canonical form.
std::vector<Graph> nonisomorphic_graphs(std::size_t n);

// All graphs with 1..max_n vertices, up to isomorphism.
std::vector<Graph> nonisomorphic_graphs_up_to(std::size_t max_n);

// Seeded G(n, p) graphs with n drawn from [min_n, max_n] and p from
// [min_p, max_p].
std::vector<Graph> random_corpus(std::size_t count, std::size_t min_n, std::size_t max_n,
                                 double min_p, double max_p, std::uint64_t seed);

bool has_isolated_vertex(const Graph& g);

// Isomorphism-invariant code, comparable across graphs of equal size.
std::uint64_t canonical_code(const Graph& g);

}  // namespace kanon::testing
