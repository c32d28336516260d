#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kanon/plan.hpp"

namespace kanon {

// Vertices grouped into supernodes of `group_size`. When group_size does not
// divide n, the leftover vertices join distinct groups as extra members.
struct SupernodePartition {
  std::vector<VertexSet> groups;
  std::size_t group_size = 0;
  std::vector<std::size_t> assignment;  // vertex -> group
};

SupernodePartition random_partition(std::size_t n, std::size_t group_size, std::uint64_t seed);

struct ExpanderRun {
  EdgePlan plan;
  SupernodePartition partition;
  std::size_t k_prime = 0;        // smallest sharer count of the input
  std::size_t degree = 0;         // d, super-edges per supernode
  std::vector<Edge> super_edges;  // pairs of group indices
  std::size_t expander_edges = 0; // edges added before any repair
  bool repaired = false;
};

// Weak (k,ell)-anonymization by a random d-regular graph on supernodes,
// each super-edge expanded to a complete bipartite K_{ell,ell}. A greedy
// repair finishes whatever the random construction leaves deficient. An
// input that is already (k,ell)-anonymous gets no edges. `k_prime`
// overrides the measured starting anonymity. Throws BadParams unless
// ell <= k <= n/2 and n >= 2*ell.
ExpanderRun weak_expander_run(const Graph& g, std::size_t k, std::size_t ell, std::uint64_t seed,
                              std::optional<std::size_t> k_prime = std::nullopt);

EdgePlan weak_expander(const Graph& g, std::size_t k, std::size_t ell, std::uint64_t seed = 0);

// Strong (k,ell)-anonymization: repeatedly adds the group of at most ell
// missing edges, all at one vertex u, that most lowers the strong residual.
// Candidate groups join u to original neighbors of a deficient vertex.
// Throws DegreeTooLow (listing vertices with fewer than ell neighbors) or
// Stuck.
EdgePlan strong_greedy_kl(const Graph& g, std::size_t k, std::size_t ell);

}  // namespace kanon
