#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kanon/kanon.hpp"

namespace kanon::cli {

namespace {

int exit_for(Errc code) {
  switch (code) {
    case Errc::IsolatedVertex:
    case Errc::TooSmall:
    case Errc::DegreeTooLow:
    case Errc::Stuck:
    case Errc::BudgetExceeded:
    case Errc::NotNormalized:
    case Errc::BadTripleCount:
      return Infeasible;
    default:
      return Usage;
  }
}

// Ordered key/value report. Machine form is key=value per line; the human
// form pads keys into a column.
class Report {
 public:
  explicit Report(bool machine) : machine_(machine) {}

  template <typename T>
  void add(std::string key, const T& value) {
    std::ostringstream s;
    s << value;
    rows_.emplace_back(std::move(key), s.str());
  }

  void print(std::ostream& out) const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) {
      if (machine_) {
        out << k << '=' << v << '\n';
      } else {
        std::string label = k;
        std::replace(label.begin(), label.end(), '_', ' ');
        out << label << std::string(width + 2 - label.size(), ' ') << v << '\n';
      }
    }
  }

 private:
  bool machine_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

struct Target {
  std::size_t k = 2;
  std::size_t ell = 1;
  std::string mode = "weak";

  Mode parsed() const { return mode == "strong" ? Mode::Strong : Mode::Weak; }
  AnonParams params() const { return {k, ell}; }
};

void add_target(CLI::App* cmd, Target& t) {
  cmd->add_option("--k", t.k, "required number of sharers per vertex")->capture_default_str();
  cmd->add_option("--l", t.ell, "common neighbors needed to count as a sharer")
      ->capture_default_str();
  cmd->add_option("--mode", t.mode, "weak or strong anonymity")
      ->check(CLI::IsMember({"weak", "strong"}))
      ->capture_default_str();
}

// Rewrites `other` onto the vertex ids of `base`, matching by label.
Graph align(const LabeledGraph& base, const LabeledGraph& other) {
  if (base.labels.empty() && other.labels.empty()) return other.graph;
  const std::size_t n = base.graph.vertex_count();
  if (other.graph.vertex_count() != n) {
    throw Error(Errc::SizeMismatch, "baseline has " + std::to_string(n) + " vertices, graph has " +
                                        std::to_string(other.graph.vertex_count()));
  }
  std::map<std::string, Vertex> id;
  for (Vertex v = 0; v < n; ++v) id.emplace(base.name(v), v);
  std::vector<Vertex> to(n);
  for (Vertex v = 0; v < n; ++v) {
    auto it = id.find(other.name(v));
    if (it == id.end())
      throw Error(Errc::SizeMismatch, "vertex '" + other.name(v) + "' is not in the baseline");
    to[v] = it->second;
  }
  Graph out(n);
  for (const Edge& e : other.graph.edges()) out.add_edge(to[e.u], to[e.v]);
  return out;
}

// Original edges in sorted order, then `added` in the given order.
void emit_graph(const LabeledGraph& in, std::span<const Edge> added,
                const std::optional<std::string>& path, std::ostream& out) {
  std::vector<Edge> all = in.graph.edges();
  all.insert(all.end(), added.begin(), added.end());
  if (path) write_edge_list_file(*path, in.graph.vertex_count(), all, in.labels);
  else write_edge_list(out, in.graph.vertex_count(), all, in.labels);
}

int cmd_check(const std::string& input, const Target& t, const std::optional<std::string>& baseline,
              bool machine, std::ostream& out, std::ostream& err) {
  const Mode mode = t.parsed();
  const LabeledGraph cur = read_edge_list(input);
  ResidualReport r;
  if (mode == Mode::Strong) {
    if (!baseline) {
      err << "error: strong mode needs --baseline (the original graph)\n";
      return Usage;
    }
    const LabeledGraph base = read_edge_list(*baseline);
    const Graph g = align(base, cur);
    if (!is_edge_subset(base.graph, g))
      throw Error(Errc::NotSuperset, input + " drops edges of " + *baseline);
    r = strong_residual(base.graph, g, t.params());
  } else {
    r = residual(cur.graph, t.params());
  }

  Report rep(machine);
  rep.add("mode", mode_name(mode));
  rep.add("k", t.k);
  rep.add("ell", t.ell);
  rep.add("vertices", cur.graph.vertex_count());
  rep.add("edges", cur.graph.edge_count());
  rep.add("deficient", r.deficient.size());
  rep.add("residual", r.total);
  rep.add("anonymous", r.total == 0 ? "yes" : "no");
  rep.print(out);
  if (!r.deficient.empty()) {
    if (machine) {
      for (Vertex v : r.deficient)
        out << "vertex." << cur.name(v) << '=' << r.sharer_count[v] << '/' << r.residual[v] << '\n';
    } else {
      out << "\nvertex  sharers  missing\n";
      for (Vertex v : r.deficient) {
        std::string name = cur.name(v);
        name.resize(std::max<std::size_t>(name.size(), 6), ' ');
        out << name << "  " << r.sharer_count[v] << "        " << r.residual[v] << '\n';
      }
    }
  }
  return r.total == 0 ? Ok : NotAnonymous;
}

int cmd_anonymize(const std::string& input, const Target& t, const AnonymizeOptions& opt,
                  const std::optional<std::string>& path, bool machine, std::ostream& out,
                  std::ostream& err) {
  const LabeledGraph in = read_edge_list(input);
  const auto start = std::chrono::steady_clock::now();
  const AnonymizeResult run = anonymize(in.graph, t.params(), opt);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  const EdgePlan& plan = run.plan;
  const bool consistent = plan.result == in.graph.with_edges(plan.added_edges) &&
                          plan.result.edge_count() == in.graph.edge_count() + plan.added_edges.size();
  const bool anonymous = opt.mode == Mode::Weak
                             ? is_kl_anonymous(plan.result, t.params())
                             : is_strong_transformation(in.graph, plan.result, t.params());
  if (!consistent || !anonymous) {
    err << "internal error: " << run.algorithm << " returned a graph that "
        << (consistent ? "is not anonymous" : "does not match its edge plan") << '\n';
    return Internal;
  }

  emit_graph(in, plan.added_edges, path, out);
  const DegreeStats deg = added_degree_stats(plan);
  Report rep(machine);
  rep.add("algorithm", run.algorithm);
  rep.add("mode", mode_name(opt.mode));
  rep.add("k", t.k);
  rep.add("ell", t.ell);
  rep.add("seed", opt.seed);
  rep.add("edges_added", plan.added_edges.size());
  rep.add("residual_before", plan.residual_before);
  rep.add("residual_after", plan.residual_after);
  rep.add("wall_ms", fixed(ms, 3));
  rep.add("added_degree_max", deg.max);
  rep.add("added_degree_mean", fixed(deg.mean, 4));
  rep.add("output", path ? *path : "-");
  // With no --out the graph owns stdout.
  rep.print(path ? out : err);
  return Ok;
}

int cmd_oracle(const std::string& input, const Target& t, const OracleOptions& opt,
               const std::optional<std::string>& path, bool machine, std::ostream& out) {
  const LabeledGraph in = read_edge_list(input);
  const OracleResult r = oracle(t.parsed(), in.graph, t.params(), opt);
  Report rep(machine);
  rep.add("mode", mode_name(t.parsed()));
  rep.add("k", t.k);
  rep.add("ell", t.ell);
  rep.add("feasible", r.feasible ? "yes" : "no");
  if (r.feasible) rep.add("minimum", r.minimum);
  rep.add("explored", r.explored);
  if (r.feasible && path) {
    emit_graph(in, r.witness, path, out);
    rep.add("output", *path);
  }
  rep.print(out);
  if (r.feasible && !machine && !path) {
    out << "\nwitness:\n";
    for (const Edge& e : r.witness) out << in.name(e.u) << ' ' << in.name(e.v) << '\n';
  }
  return r.feasible ? Ok : Infeasible;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Make graphs (k,l)-anonymous by adding edges.", "kanon"};
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--machine", machine, "key=value output");

  std::string input;
  Target target;
  std::optional<std::string> out_path, baseline;

  auto* check = app.add_subcommand("check", "report the residual of a graph; exit 1 unless anonymous");
  check->add_option("input", input, "edge-list file")->required();
  add_target(check, target);
  check->add_option("--baseline", baseline, "original graph (strong mode)");
  check->add_flag("--machine", machine, "key=value output");

  AnonymizeOptions aopt;
  std::string algo = "auto";
  auto* anon = app.add_subcommand("anonymize", "add edges until the graph is anonymous");
  anon->add_option("input", input, "edge-list file")->required();
  add_target(anon, target);
  anon->add_option("--algo", algo, "auto, exact21, any, greedy or expander")
      ->check(CLI::IsMember({"auto", "exact21", "any", "greedy", "expander"}))
      ->capture_default_str();
  anon->add_option("--seed", aopt.seed, "random seed")->capture_default_str();
  anon->add_flag("--linear", aopt.linear, "strong exact21: greedy matching");
  anon->add_option("--out", out_path, "output edge list (default: stdout)");
  anon->add_flag("--machine", machine, "key=value output");

  OracleOptions oopt;
  std::optional<std::size_t> budget;
  bool exhaustive = false;
  auto* orc = app.add_subcommand("oracle", "exact minimum by exhaustive search (small graphs)");
  orc->add_option("input", input, "edge-list file")->required();
  add_target(orc, target);
  orc->add_option("--budget", budget, "largest edge count to try");
  orc->add_flag("--exhaustive", exhaustive, "plain subset enumeration");
  orc->add_option("--out", out_path, "write the input plus the witness edges");
  orc->add_flag("--machine", machine, "key=value output");

  auto* gen = app.add_subcommand("gen", "write generated graphs");
  gen->require_subcommand(1);
  std::size_t n = 0, triples = 12, hard_k = 6;
  double p = 0.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* grand = gen->add_subcommand("random", "G(n,p) graph");
  grand->add_option("--n", n, "vertex count")->required();
  grand->add_option("--p", p, "edge probability")->check(CLI::Range(0.0, 1.0))->required();
  grand->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  grand->add_option("--out", gen_out, "output edge list")->required();
  grand->add_flag("--machine", machine, "key=value output");
  auto* ghard = gen->add_subcommand("hard", "reduction graph of a random 1-in-3 SAT instance");
  ghard->add_option("--triples", triples, "triple count (multiple of 6, at least 12)")
      ->capture_default_str();
  ghard->add_option("--k", hard_k, "target sharer count of triple vertices")->capture_default_str();
  ghard->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  ghard->add_option("--out", gen_out, "output edge list; metadata goes to <out>.meta")->required();
  ghard->add_flag("--machine", machine, "key=value output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    if (*check) return cmd_check(input, target, baseline, machine, out, err);
    if (*anon) {
      aopt.mode = target.parsed();
      aopt.algo = *parse_algo(algo);
      return cmd_anonymize(input, target, aopt, out_path, machine, out, err);
    }
    if (*orc) {
      if (budget) oopt.max_budget = *budget;
      oopt.search = exhaustive ? OracleSearch::Exhaustive : OracleSearch::Pruned;
      return cmd_oracle(input, target, oopt, out_path, machine, out);
    }
    Report rep(machine);
    if (*grand) {
      const Graph g = random_graph(n, p, gen_seed);
      write_edge_list_file(gen_out, g.vertex_count(), g.edges());
      rep.add("vertices", g.vertex_count());
      rep.add("edges", g.edge_count());
    } else {
      const ReductionGraph rg =
          reduction_graph(random_normalized_instance(triples, gen_seed), hard_k);
      write_edge_list_file(gen_out, rg.graph.vertex_count(), rg.graph.edges());
      const std::string meta = gen_out + ".meta";
      std::ofstream(meta) << reduction_metadata(rg);
      rep.add("vertices", rg.graph.vertex_count());
      rep.add("edges", rg.graph.edge_count());
      rep.add("m", rg.m);
      rep.add("k", rg.k);
      rep.add("metadata", meta);
    }
    rep.add("output", gen_out);
    rep.print(out);
    return Ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Internal;
  }
}

}  // namespace kanon::cli
