#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kanon/graph.hpp"
#include "kanon/plan.hpp"

namespace kanon {

// Which local configuration produced a deficit.
enum class DeficitRule : std::uint8_t {
  None,
  // weak
  IsolatedEdge,
  IsolatedPath3,
  IsolatedPath4,
  PathWithAttachment,
  IsolatedStar,
  IsolatedSquare,
  SquareWithOutEdges,
  MultiSquare,
  LeafFan,
  // strong
  StrongIsolatedEdge,
  StrongIsolatedPath4,
  StrongIsolatedSquare,
  StrongSquareWithOutEdges,
  StrongMultiSquare,
  StrongPath3,
  StrongStar,
  StrongPathPrefix,
  StrongPathPrefixBranch,
  StrongLeafFan,
  // a deficient vertex none of the rules above accounted for
  Fallback,
};

std::string_view deficit_rule_name(DeficitRule rule) noexcept;

// What a deficit endpoint needs from the vertex it is eventually joined to.
enum class PartnerNeed : std::uint8_t {
  Any,          // any non-adjacent vertex, isolated ones included
  OneNeighbor,  // partner must bring at least one new sharer
  TwoNeighbors  // partner must bring at least two new sharers
};

struct DeficitAssignment {
  std::vector<std::uint8_t> deficit;  // per vertex, 0..2
  std::vector<DeficitRule> rule;      // per vertex; None where deficit is 0
  std::vector<PartnerNeed> need;      // per vertex
  std::size_t total = 0;

  VertexSet vertices() const;
};

// Deficit assignment for weak (2,1)-anonymity. Isolated vertices get no
// deficit here; the matching phase places them. `scan_order` permutes the
// order in which deficient vertices are visited (empty: ascending ids); the
// total does not depend on it.
DeficitAssignment assign_deficits_weak(const Graph& g, std::span<const Vertex> scan_order = {});

// Deficit assignment for strong (2,1)-anonymity. Throws IsolatedVertex.
DeficitAssignment assign_deficits_strong(const Graph& g, std::span<const Vertex> scan_order = {});

// Minimum-edge weak (2,1)-anonymization. Throws TooSmall when no edge set
// works (fewer than three vertices).
EdgePlan anonymize_weak_21(const Graph& g, std::uint64_t seed = 0);

enum class MatchingMode {
  Exact,  // maximum matching over deficit vertices
  Linear  // seeded greedy matching; at most two edges above Exact
};

// Strong (2,1)-anonymization. Throws IsolatedVertex when infeasible.
EdgePlan anonymize_strong_21(const Graph& g, MatchingMode mode = MatchingMode::Exact,
                             std::uint64_t seed = 0);

}  // namespace kanon
