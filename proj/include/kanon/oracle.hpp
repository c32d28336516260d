#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "kanon/anonymity.hpp"

namespace kanon {

enum class OracleSearch {
  // Branch on the edges that can still help one deficient vertex; complete
  // because any solution must touch that vertex's neighborhood.
  Pruned,
  // Every added-edge subset, by size then lexicographically.
  Exhaustive,
};

struct OracleOptions {
  // Largest solution size tried; npos means "all missing edges".
  std::size_t max_budget = std::numeric_limits<std::size_t>::max();
  OracleSearch search = OracleSearch::Pruned;
  // Exhaustive search refuses graphs with more missing edges than this.
  std::size_t max_pairs = 40;
};

struct OracleResult {
  bool feasible = false;  // false: no edge set of any size works
  std::size_t minimum = 0;
  std::vector<Edge> witness;  // sorted
  std::uint64_t explored = 0;
};

// Minimum number of added edges making g (k,ell)-anonymous. Throws
// BudgetExceeded when a solution exists but none within max_budget.
OracleResult oracle_weak(const Graph& g, const AnonParams& p, const OracleOptions& options = {});

// Same, for strong transformations of g.
OracleResult oracle_strong(const Graph& g, const AnonParams& p, const OracleOptions& options = {});

OracleResult oracle(Mode mode, const Graph& g, const AnonParams& p,
                    const OracleOptions& options = {});

}  // namespace kanon
