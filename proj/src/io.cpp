#include "kanon/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace kanon {

std::string LabeledGraph::name(Vertex v) const {
  return v < labels.size() ? labels[v] : std::to_string(v);
}

namespace {

struct Line {
  std::size_t number;
  std::string a, b;
};

std::optional<std::size_t> as_count(const std::string& s) {
  std::size_t x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return x;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(Errc::Parse, source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

LabeledGraph parse_edge_list(std::istream& in, const std::string& source) {
  std::vector<Line> lines;
  std::optional<std::size_t> declared;
  std::string raw;
  std::size_t number = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!seen_content && tok.size() == 2 && tok[0] == "n") {
      seen_content = true;
      declared = as_count(tok[1]);
      if (!declared) fail(source, number, "bad vertex count '" + tok[1] + "'");
      continue;
    }
    seen_content = true;
    if (tok.size() != 2) {
      fail(source, number, "expected two vertices, got " + std::to_string(tok.size()) + " token" +
                               (tok.size() == 1 ? "" : "s"));
    }
    lines.push_back({number, tok[0], tok[1]});
  }

  bool numeric = true;
  for (const Line& l : lines) numeric = numeric && as_count(l.a) && as_count(l.b);

  LabeledGraph out;
  std::vector<std::pair<Vertex, Vertex>> ends;
  std::size_t n = 0;
  if (numeric) {
    for (const Line& l : lines) {
      const std::size_t a = *as_count(l.a), b = *as_count(l.b);
      if (std::max(a, b) >= UINT32_MAX) fail(source, l.number, "vertex id too large");
      ends.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
      n = std::max(n, std::max(a, b) + 1);
    }
  } else {
    std::unordered_map<std::string, Vertex> ids;
    auto id = [&](const std::string& s) {
      auto [it, fresh] = ids.emplace(s, static_cast<Vertex>(out.labels.size()));
      if (fresh) out.labels.push_back(s);
      return it->second;
    };
    for (const Line& l : lines) {
      const Vertex a = id(l.a);
      ends.emplace_back(a, id(l.b));
    }
    n = out.labels.size();
  }
  if (declared) {
    if (*declared < n) {
      std::size_t i = 0;
      while (std::max(ends[i].first, ends[i].second) < *declared) ++i;
      fail(source, lines[i].number,
           "vertex count is declared as " + std::to_string(*declared) + " but this edge needs " +
               std::to_string(std::max(ends[i].first, ends[i].second) + 1));
    }
    n = *declared;
    for (std::size_t v = out.labels.size(); !numeric && v < n; ++v)
      out.labels.push_back(std::to_string(v));
  }

  std::set<Edge> seen;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto [a, b] = ends[i];
    if (a == b) fail(source, lines[i].number, "self-loop at '" + lines[i].a + "'");
    if (!seen.insert(Edge(a, b)).second)
      fail(source, lines[i].number, "duplicate edge " + lines[i].a + " " + lines[i].b);
    edges.emplace_back(a, b);
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

LabeledGraph parse_edge_list_string(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

LabeledGraph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open " + path);
  return parse_edge_list(in, path);
}

void write_edge_list(std::ostream& out, std::size_t vertex_count, std::span<const Edge> edges,
                     std::span<const std::string> labels) {
  auto name = [&](Vertex v) { return v < labels.size() ? labels[v] : std::to_string(v); };
  out << "n " << vertex_count << '\n';
  for (const Edge& e : edges) out << name(e.u) << ' ' << name(e.v) << '\n';
}

void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::string> labels) {
  const auto edges = g.edges();
  write_edge_list(out, g.vertex_count(), edges, labels);
}

void write_edge_list_file(const std::string& path, std::size_t vertex_count,
                          std::span<const Edge> edges, std::span<const std::string> labels) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Parse, "cannot write " + path);
  write_edge_list(out, vertex_count, edges, labels);
}

}  // namespace kanon
