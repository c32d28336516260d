#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kanon/graph.hpp"

namespace kanon {

// A parsed edge list. When the file names vertices by label, `labels[v]` is
// the label of vertex v; for integer ids it is empty.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;

  std::string name(Vertex v) const;
};

// Edge-list text: one edge per line as two whitespace-separated tokens.
// '#' starts a comment. An optional first line "n <count>" fixes the vertex
// count, which is how isolated vertices are declared. If every token is a
// nonnegative integer the tokens are vertex ids; otherwise they are labels,
// numbered in order of first appearance. Throws Parse with the line number.
LabeledGraph parse_edge_list(std::istream& in, const std::string& source = "<input>");
LabeledGraph parse_edge_list_string(const std::string& text);
LabeledGraph read_edge_list(const std::string& path);

// Writes the "n" header and then `edges` in the given order, one per line.
void write_edge_list(std::ostream& out, std::size_t vertex_count, std::span<const Edge> edges,
                     std::span<const std::string> labels = {});
void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::string> labels = {});
void write_edge_list_file(const std::string& path, std::size_t vertex_count,
                          std::span<const Edge> edges, std::span<const std::string> labels = {});

}  // namespace kanon
