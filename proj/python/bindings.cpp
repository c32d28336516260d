#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "kanon/kanon.hpp"

namespace py = pybind11;
using namespace kanon;

namespace {

using Pair = std::pair<Vertex, Vertex>;

std::vector<Pair> pairs(const std::vector<Edge>& edges) {
  std::vector<Pair> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

std::vector<Edge> edges_of(const std::vector<Pair>& in) {
  std::vector<Edge> out;
  out.reserve(in.size());
  for (auto [u, v] : in) out.emplace_back(u, v);
  return out;
}

Mode mode_of(const std::string& s) {
  if (s == "weak") return Mode::Weak;
  if (s == "strong") return Mode::Strong;
  throw Error(Errc::BadParams, "mode must be 'weak' or 'strong', got '" + s + "'");
}

py::dict report_dict(const ResidualReport& r) {
  py::dict d;
  d["sharer_count"] = r.sharer_count;
  d["residual"] = r.residual;
  d["total"] = r.total;
  d["deficient"] = r.deficient;
  return d;
}

}  // namespace

PYBIND11_MODULE(_kanon, m) {
  m.doc() = "Edge-addition (k, l)-anonymization of simple undirected graphs.";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result(
      [&] { return py::exception<Error>(m, "KanonError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = error.get_stored();
      py::object inst = type(e.what());
      inst.attr("code") = errc_name(e.code());
      inst.attr("vertices") = e.vertices();
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Pair>& edges) {
             const auto e = edges_of(edges);
             return Graph::from_edges(n, e);
           }),
           py::arg("n"), py::arg("edges") = std::vector<Pair>{})
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("edges", [](const Graph& g) { return pairs(g.edges()); })
      .def("neighbors", [](const Graph& g, Vertex v) { return g.neighbors(v); })
      .def("degree", &Graph::degree)
      .def("has_edge", &Graph::has_edge)
      .def("add_edge", py::overload_cast<Vertex, Vertex>(&Graph::add_edge))
      .def("copy", [](const Graph& g) { return Graph(g); })
      .def(py::self == py::self)
      .def("__repr__", [](const Graph& g) {
        std::ostringstream s;
        s << "Graph(n=" << g.vertex_count() << ", edges=" << g.edge_count() << ")";
        return s.str();
      });

  m.def("complete_graph", &complete_graph);
  m.def("path_graph", &path_graph);
  m.def("cycle_graph", &cycle_graph);
  m.def("star_graph", &star_graph);
  m.def("random_graph", &random_graph, py::arg("n"), py::arg("p"), py::arg("seed") = 0);
  m.def("common_neighbor_count", &common_neighbor_count);
  m.def("two_neighborhood", &two_neighborhood);

  py::class_<EdgePlan>(m, "EdgePlan")
      .def_property_readonly("added_edges", [](const EdgePlan& p) { return pairs(p.added_edges); })
      .def_readonly("result", &EdgePlan::result)
      .def_readonly("residual_before", &EdgePlan::residual_before)
      .def_readonly("residual_after", &EdgePlan::residual_after)
      .def_property_readonly("trace",
                             [](const EdgePlan& p) {
                               py::list out;
                               for (const PlanStep& s : p.trace)
                                 out.append(py::make_tuple(pairs(s.edges), s.residual_before,
                                                           s.residual_after));
                               return out;
                             })
      .def("added_degrees", &added_degrees)
      .def("__str__", [](const EdgePlan& p) { return to_string(p); });

  m.def("sharers", &sharers, py::arg("g"), py::arg("v"), py::arg("ell"));
  m.def(
      "is_anonymous",
      [](const Graph& g, std::size_t k, std::size_t ell) { return is_kl_anonymous(g, {k, ell}); },
      py::arg("g"), py::arg("k"), py::arg("ell") = 1);
  m.def(
      "residual",
      [](const Graph& g, std::size_t k, std::size_t ell) { return report_dict(residual(g, {k, ell})); },
      py::arg("g"), py::arg("k"), py::arg("ell") = 1);
  m.def(
      "strong_residual",
      [](const Graph& original, const Graph& current, std::size_t k, std::size_t ell) {
        return report_dict(strong_residual(original, current, {k, ell}));
      },
      py::arg("original"), py::arg("current"), py::arg("k"), py::arg("ell") = 1);
  m.def(
      "is_strong_transformation",
      [](const Graph& original, const Graph& transformed, std::size_t k, std::size_t ell) {
        return is_strong_transformation(original, transformed, {k, ell});
      },
      py::arg("original"), py::arg("transformed"), py::arg("k"), py::arg("ell") = 1);

  m.def("anonymize_weak_21", &anonymize_weak_21, py::arg("g"), py::arg("seed") = 0);
  m.def(
      "anonymize_strong_21",
      [](const Graph& g, bool linear, std::uint64_t seed) {
        return anonymize_strong_21(g, linear ? MatchingMode::Linear : MatchingMode::Exact, seed);
      },
      py::arg("g"), py::arg("linear") = false, py::arg("seed") = 0);
  m.def("weak_any", &weak_any, py::arg("g"), py::arg("k"), py::arg("seed") = 0);
  m.def("strong_any", &strong_any, py::arg("g"), py::arg("k"), py::arg("seed") = 0);
  m.def("weak_greedy", &weak_greedy, py::arg("g"), py::arg("k"), py::arg("seed") = 0);
  m.def("strong_greedy", &strong_greedy, py::arg("g"), py::arg("k"));
  m.def("weak_expander", &weak_expander, py::arg("g"), py::arg("k"), py::arg("ell"),
        py::arg("seed") = 0);
  m.def("strong_greedy_kl", &strong_greedy_kl, py::arg("g"), py::arg("k"), py::arg("ell"));
  m.def(
      "anonymize",
      [](const Graph& g, std::size_t k, std::size_t ell, const std::string& mode,
         const std::string& algo, std::uint64_t seed, bool linear) {
        AnonymizeOptions o;
        o.mode = mode_of(mode);
        const auto a = parse_algo(algo);
        if (!a) throw Error(Errc::BadParams, "unknown algorithm '" + algo + "'");
        o.algo = *a;
        o.seed = seed;
        o.linear = linear;
        AnonymizeResult r = anonymize(g, {k, ell}, o);
        return py::make_tuple(std::move(r.plan), r.algorithm);
      },
      py::arg("g"), py::arg("k") = 2, py::arg("ell") = 1, py::arg("mode") = "weak",
      py::arg("algo") = "auto", py::arg("seed") = 0, py::arg("linear") = false,
      "Runs the algorithm picked by `algo`; returns (plan, algorithm name).");

  m.def(
      "oracle",
      [](const Graph& g, std::size_t k, std::size_t ell, const std::string& mode,
         std::optional<std::size_t> budget, bool exhaustive) -> py::object {
        OracleOptions o;
        if (budget) o.max_budget = *budget;
        if (exhaustive) o.search = OracleSearch::Exhaustive;
        const OracleResult r = oracle(mode_of(mode), g, {k, ell}, o);
        if (!r.feasible) return py::none();
        return py::make_tuple(r.minimum, pairs(r.witness));
      },
      py::arg("g"), py::arg("k"), py::arg("ell") = 1, py::arg("mode") = "weak",
      py::arg("budget") = py::none(), py::arg("exhaustive") = false,
      "Minimum edge count and one optimal edge set, or None when no edge set works.");

  m.def(
      "reduction_graph",
      [](std::size_t triples, std::uint64_t seed, std::size_t k) {
        const OneInThreeInstance inst = random_normalized_instance(triples, seed);
        const ReductionGraph rg = reduction_graph(inst, k);
        py::dict meta;
        meta["m"] = rg.m;
        meta["k"] = rg.k;
        meta["u_vertices"] = rg.u_vertices;
        meta["v_vertices"] = rg.v_vertices;
        meta["satisfiable"] = solve_one_in_three(inst).has_value();
        return py::make_tuple(rg.graph, meta);
      },
      py::arg("triples") = 12, py::arg("seed") = 0, py::arg("k") = 6);

  m.def(
      "parse_edge_list",
      [](const std::string& text) {
        LabeledGraph lg = parse_edge_list_string(text);
        return py::make_tuple(std::move(lg.graph), lg.labels);
      },
      py::arg("text"));
  m.def(
      "format_edge_list",
      [](const Graph& g, const std::vector<std::string>& labels) {
        std::ostringstream s;
        write_edge_list(s, g, labels);
        return s.str();
      },
      py::arg("g"), py::arg("labels") = std::vector<std::string>{});
}
