#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "kanon/errors.hpp"
#include "kanon/hardgen.hpp"
#include "kanon/io.hpp"

using namespace kanon;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_edge_list_string(text);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Parse);
    return e.what();
  }
  FAIL("no parse error");
  return {};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("numeric edge lists") {
  const LabeledGraph g = parse_edge_list_string("# a path\n0 1\n1 2\n\n");
  CHECK(g.labels.empty());
  CHECK(g.graph == path_graph(3));
  const LabeledGraph h = parse_edge_list_string("n 5\n0 1   # trailing comment\n");
  CHECK(h.graph.vertex_count() == 5);
  CHECK(h.graph.edge_count() == 1);
}

TEST_CASE("labels map in order of first appearance") {
  const LabeledGraph g = parse_edge_list_string("bob alice\nalice carol\n");
  CHECK(g.labels == std::vector<std::string>{"bob", "alice", "carol"});
  CHECK(g.graph.has_edge(0, 1));
  CHECK(g.graph.has_edge(1, 2));
  CHECK(g.name(2) == "carol");
}

TEST_CASE("errors name the line") {
  CHECK(parse_error("0 1\na\n").find(":2:") != std::string::npos);
  CHECK(parse_error("0 0\n").find(":1:") != std::string::npos);
  CHECK(parse_error("0 1\n1 0\n").find(":2:") != std::string::npos);
  CHECK(parse_error("n 2\n0 5\n").find(":2:") != std::string::npos);
  CHECK(parse_error("0 1 2\n").find(":1:") != std::string::npos);
}

TEST_CASE("round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_graph(15, 0.2, seed);
    std::ostringstream out;
    write_edge_list(out, g);
    const LabeledGraph back = parse_edge_list_string(out.str());
    CHECK(back.graph == g);
    CHECK(back.graph.vertex_count() == g.vertex_count());
  }
  const LabeledGraph named = parse_edge_list_string("n 4\nx y\ny z\n");
  std::ostringstream out;
  write_edge_list(out, named.graph, named.labels);
  CHECK(parse_edge_list_string(out.str()).graph == named.graph);
}

TEST_CASE("files") {
  const auto path = std::filesystem::temp_directory_path() / "kanon_io_test.txt";
  const Graph g = cycle_graph(5);
  const auto edges = g.edges();
  write_edge_list_file(path.string(), 6, edges);
  const LabeledGraph back = read_edge_list(path.string());
  CHECK(back.graph.vertex_count() == 6);
  CHECK(back.graph.edges() == edges);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_edge_list(path.string()), Error);
}

}
