#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kanon/types.hpp"

namespace kanon {

// Disjoint pairs drawn from an allowed-pair list, sorted.
using Matching = std::vector<Edge>;

// Maximum-cardinality matching on the general graph whose vertex set is
// `vertices` and whose edges are `allowed` (Edmonds' blossom algorithm).
// Pairs with an endpoint outside `vertices` are ignored.
Matching max_matching(std::span<const Vertex> vertices, std::span<const Edge> allowed);

// Maximal matching: allowed pairs are scanned in a seeded random order and
// taken whenever both endpoints are still free.
Matching greedy_matching(std::span<const Vertex> vertices, std::span<const Edge> allowed,
                         std::uint64_t seed);

// True when no vertex is used twice and every pair is allowed.
bool is_valid_matching(std::span<const Edge> matching, std::span<const Edge> allowed);

}  // namespace kanon
