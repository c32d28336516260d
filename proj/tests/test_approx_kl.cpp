#include <doctest.h>

#include <cmath>
#include <set>

#include "kanon/anonymity.hpp"
#include "kanon/approx_kl.hpp"
#include "kanon/errors.hpp"
#include "kanon/hardgen.hpp"
#include "kanon/oracle.hpp"
#include "support/corpus.hpp"

using namespace kanon;

TEST_SUITE("approx_kl") {

TEST_CASE("partition") {
  for (std::size_t n : {12, 13, 17}) {
    const SupernodePartition p = random_partition(n, 3, 4);
    CHECK(p.groups.size() == n / 3);
    std::vector<int> seen(n, 0);
    for (std::size_t g = 0; g < p.groups.size(); ++g) {
      CHECK(p.groups[g].size() >= 3);
      CHECK(p.groups[g].size() <= 4);
      for (Vertex v : p.groups[g]) {
        ++seen[v];
        CHECK(p.assignment[v] == g);
      }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
  CHECK_THROWS_AS(random_partition(2, 3, 0), Error);
}

TEST_CASE("expander on an empty graph") {
  const Graph g(500);
  const ExpanderRun run = weak_expander_run(g, 8, 2, 1);
  CHECK(is_kl_anonymous(run.plan.result, {8, 2}));
  CHECK(run.k_prime == 0);
  // d = ceil(sqrt(8/2)) + 1
  CHECK(run.degree == 3);
  std::vector<std::set<Vertex>> nbrs(run.partition.groups.size());
  for (const Edge& e : run.super_edges) {
    nbrs[e.u].insert(e.v);
    nbrs[e.v].insert(e.u);
  }
  for (const auto& s : nbrs) CHECK(s.size() == run.degree);
  CHECK(run.expander_edges == run.super_edges.size() * 4);
  const DegreeStats d = added_degree_stats(run.plan);
  CHECK(d.max <= 4.0 * std::sqrt(8.0 * 2.0));
  if (!run.repaired)
    for (std::size_t x : added_degrees(run.plan)) CHECK(x == run.degree * 2);
}

TEST_CASE("expander: two groups of three make K33") {
  const ExpanderRun run = weak_expander_run(Graph(6), 3, 3, 0);
  CHECK(run.partition.groups.size() == 2);
  CHECK(run.super_edges.size() == 1);
  CHECK(run.expander_edges == 9);
  // Each side shares all three neighbors with only its two partners.
  REQUIRE_FALSE(run.plan.trace.empty());
  CHECK_FALSE(is_kl_anonymous(Graph::from_edges(6, run.plan.trace[0].edges), {3, 3}));
  CHECK(is_kl_anonymous(run.plan.result, {3, 3}));
  CHECK(run.repaired);
}

TEST_CASE("expander: anonymous input is left alone") {
  const Graph k8 = complete_graph(8);
  const ExpanderRun run = weak_expander_run(k8, 4, 2, 0);
  CHECK(run.plan.added_edges.empty());
  CHECK(run.plan.result == k8);
}

TEST_CASE("expander: preconditions") {
  CHECK_THROWS_AS(weak_expander(Graph(10), 6, 2), Error);
  CHECK_THROWS_AS(weak_expander(Graph(10), 2, 3), Error);
  CHECK_THROWS_AS(weak_expander(Graph(3), 1, 2), Error);
}

TEST_CASE("expander on sparse random graphs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = random_graph(120, 0.02, seed);
    const EdgePlan p = weak_expander(g, 6, 2, seed);
    CHECK(is_kl_anonymous(p.result, {6, 2}));
    CHECK(p.result == g.with_edges(p.added_edges));
  }
}

TEST_CASE("strong_greedy_kl") {
  CHECK(strong_greedy_kl(complete_graph(6), 3, 2).added_edges.empty());
  try {
    strong_greedy_kl(path_graph(4), 1, 2);
    FAIL("expected DegreeTooLow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegreeTooLow);
    CHECK(e.vertices() == VertexSet{0, 3});
  }
  const Graph c5 = cycle_graph(5);
  const EdgePlan p = strong_greedy_kl(c5, 1, 2);
  CHECK(is_strong_transformation(c5, p.result, {1, 2}));
  const OracleResult o = oracle_strong(c5, {1, 2});
  REQUIRE(o.feasible);
  CHECK(p.added_edges.size() >= o.minimum);
  // Every step is at most ell edges sharing one endpoint.
  for (const PlanStep& s : p.trace) {
    CHECK(s.edges.size() <= 2);
    if (s.edges.size() == 2) {
      const Edge a = s.edges[0], b = s.edges[1];
      CHECK((a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v));
    }
  }
}

TEST_CASE("strong_greedy_kl on random graphs") {
  for (const Graph& g : testing::random_corpus(20, 6, 10, 0.4, 0.7, 3)) {
    bool ok = true;
    for (Vertex v = 0; v < g.vertex_count(); ++v) ok = ok && g.degree(v) >= 2;
    if (!ok) continue;
    const EdgePlan p = strong_greedy_kl(g, 2, 2);
    CHECK(is_strong_transformation(g, p.result, {2, 2}));
  }
}

}
