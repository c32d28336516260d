#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kanon/graph.hpp"

namespace kanon {

// One step of an iterative anonymizer: the edges it added and the residual
// on either side of the step.
struct PlanStep {
  std::vector<Edge> edges;
  std::size_t residual_before = 0;
  std::size_t residual_after = 0;
};

// Output shared by every anonymizer: the input graph plus `added_edges`.
struct EdgePlan {
  std::vector<Edge> added_edges;  // in insertion order
  Graph result;
  std::size_t residual_before = 0;
  std::size_t residual_after = 0;
  std::vector<PlanStep> trace;  // filled by the iterative algorithms
};

struct DegreeStats {
  std::size_t max = 0;
  double mean = 0.0;
};

// Per-vertex count of added edges.
std::vector<std::size_t> added_degrees(const EdgePlan& plan);
DegreeStats added_degree_stats(const EdgePlan& plan);

// Canonical text rendering; equal plans render to identical bytes.
std::string to_string(const EdgePlan& plan);

}  // namespace kanon
