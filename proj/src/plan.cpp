#include "kanon/plan.hpp"

#include <algorithm>
#include <sstream>

namespace kanon {

std::vector<std::size_t> added_degrees(const EdgePlan& plan) {
  std::vector<std::size_t> deg(plan.result.vertex_count(), 0);
  for (const Edge& e : plan.added_edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

DegreeStats added_degree_stats(const EdgePlan& plan) {
  DegreeStats s;
  auto deg = added_degrees(plan);
  if (deg.empty()) return s;
  std::size_t sum = 0;
  for (std::size_t d : deg) {
    s.max = std::max(s.max, d);
    sum += d;
  }
  s.mean = static_cast<double>(sum) / static_cast<double>(deg.size());
  return s;
}

std::string to_string(const EdgePlan& plan) {
  std::ostringstream out;
  out << "n " << plan.result.vertex_count() << '\n';
  out << "residual_before " << plan.residual_before << '\n';
  out << "residual_after " << plan.residual_after << '\n';
  out << "added " << plan.added_edges.size() << '\n';
  for (const Edge& e : plan.added_edges) out << e.u << ' ' << e.v << '\n';
  for (const PlanStep& step : plan.trace) {
    out << "step " << step.residual_before << ' ' << step.residual_after;
    for (const Edge& e : step.edges) out << ' ' << e.u << '-' << e.v;
    out << '\n';
  }
  return out.str();
}

}  // namespace kanon
