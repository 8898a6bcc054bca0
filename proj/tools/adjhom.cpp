// Command-line front end. Exit 0 means a definitive answer and 2 means the
// node budget ran out; errors and failed checks exit with 1.

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "adjhom/functors.hpp"
#include "adjhom/graph.hpp"
#include "adjhom/hom.hpp"
#include "adjhom/io.hpp"
#include "adjhom/reductions.hpp"
#include "adjhom/suites.hpp"
#include "adjhom/topology.hpp"

using namespace adjhom;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

struct Globals {
  bool json_out = false;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> cap;
  unsigned jobs = 1;
};

SearchOptions search_options(const Globals& g, bool fold = true) {
  SearchOptions o;
  if (g.budget) o.node_budget = *g.budget;
  o.fold_dominated = fold;
  return o;
}

/// Report envelope; `result` is deterministic, timing sits outside it.
json envelope(const std::string& command, json inputs, json result, std::uint64_t nodes, double seconds) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"inputs", std::move(inputs)},
          {"result", std::move(result)},
          {"budget", {{"nodes", nodes}}},
          {"wall_seconds", seconds}};
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit_graph(const Graph& g, const std::string& out, const std::vector<std::string>& comments = {}) {
  auto text = serialize(g, comments);
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
}

void emit_json(const json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << j.dump(2) << "\n";
  else
    write_text_file(out, j.dump(2) + "\n");
}

/// Re-reads a written certificate and validates it from scratch.
int verify_written(const std::string& path, const json& cert, const SearchOptions& opts) {
  json j = (path.empty() || path == "-") ? cert : read_json_file(path);
  auto v = verify_certificate(j, opts);
  std::cerr << (v.ok ? "verified: " : "verification FAILED: ") << v.message << "\n";
  return v.ok ? kExitOk : kExitError;
}

std::pair<int, int> parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) throw std::invalid_argument("expected p/q, got '" + s + "'");
  return {std::stoi(s.substr(0, slash)), std::stoi(s.substr(slash + 1))};
}

// ----------------------------------------------------------------- commands

int cmd_gen(const Globals& gl, const std::string& spec, const std::string& out) {
  auto fam = GraphFamily::parse(spec);
  auto g = build(fam);
  if (gl.json_out) {
    emit_json(envelope("gen", {{"spec", fam.to_string()}},
                       {{"graph", serialize(g)}, {"hash", graph_hash(g)}, {"vertices", g.size()},
                        {"arcs", g.arc_count()}},
                       0, 0),
              "-");
    if (!out.empty()) emit_graph(g, out);
  } else {
    emit_graph(g, out, {"generated " + fam.to_string()});
  }
  return kExitOk;
}

int cmd_apply(const Globals& gl, const std::string& functor, const std::string& in, const std::string& out) {
  auto spec = FunctorSpec::parse(functor);
  auto g = read_graph_file(in);
  auto r = apply_functor(spec, g);
  std::vector<std::string> comments = {"functor " + spec.to_string(), "input " + graph_hash(g)};
  if (gl.json_out) {
    emit_json(envelope("apply", {{"functor", spec.to_string()}, {"input_hash", graph_hash(g)}},
                       {{"graph", serialize(r)}, {"hash", graph_hash(r)}, {"vertices", r.size()},
                        {"arcs", r.arc_count()}},
                       0, 0),
              "-");
    if (!out.empty()) emit_graph(r, out, comments);
  } else {
    emit_graph(r, out, comments);
  }
  return kExitOk;
}

int cmd_hom(const Globals& gl, const std::string& from, const std::string& to, std::size_t arity,
            bool no_fold, const std::string& out, bool verify) {
  Timer t;
  auto g = read_graph_file(from), h = read_graph_file(to);
  auto opts = search_options(gl, !no_fold);
  auto source = arity == 1 ? g : power(g, arity);
  auto r = find_homomorphism(source, h, opts);
  json result{{"outcome", r.outcome == Outcome::found ? "found" : r.outcome == Outcome::none ? "none" : "unknown"},
              {"folded", r.stats.folded},
              {"components", r.stats.components}};
  std::optional<json> cert;
  if (r.map) {
    cert = arity == 1 ? hom_certificate(g, h, *r.map)
                      : polymorphism_certificate(g, h, Polymorphism{g.size(), arity, h.size(), r.map->image});
    result["certificate"] = *cert;
  }
  json inputs{{"source_hash", graph_hash(g)}, {"target_hash", graph_hash(h)}, {"arity", arity}};
  if (gl.json_out) {
    emit_json(envelope("hom", inputs, result, r.stats.nodes, t.seconds()), "-");
  } else {
    std::cout << result["outcome"].get<std::string>() << " (" << r.stats.nodes << " nodes, " << r.stats.folded
              << " folded)\n";
    if (r.map && out.empty()) {
      for (std::size_t v = 0; v < r.map->image.size(); ++v) std::cout << v << " -> " << r.map->image[v] << "\n";
    }
  }
  if (cert && !out.empty()) emit_json(*cert, out);
  if (cert && verify && verify_written(out, *cert, opts) != kExitOk) return kExitError;
  return r.outcome == Outcome::unknown ? kExitUnknown : kExitOk;
}

int cmd_chi(const Globals& gl, const std::string& in, const std::string& out, bool verify) {
  Timer t;
  auto g = read_graph_file(in);
  auto opts = search_options(gl);
  auto chi = chromatic_number(g, opts);
  auto cert = chromatic_certificate(g, chi);
  if (gl.json_out) {
    emit_json(envelope("chi", {{"input_hash", graph_hash(g)}}, cert, 0, t.seconds()), "-");
  } else {
    switch (chi.kind) {
      case ChromaticNumber::Kind::exact: std::cout << chi.value << "\n"; break;
      case ChromaticNumber::Kind::has_loop: std::cout << "has-loop\n"; break;
      case ChromaticNumber::Kind::bounds: std::cout << chi.value << ".." << chi.upper << " (unknown)\n"; break;
    }
  }
  if (!out.empty()) emit_json(cert, out);
  if (verify && verify_written(out, cert, opts) != kExitOk) return kExitError;
  return chi.kind == ChromaticNumber::Kind::bounds ? kExitUnknown : kExitOk;
}

int cmd_reduce(const Globals& gl, const std::string& pipeline, const std::string& pipeline_file, std::size_t n,
               std::size_t k, const std::string& in, const std::string& out, const std::string& trace_path,
               bool verify) {
  Timer t;
  auto g = read_graph_file(in);
  auto p = pipeline_file.empty() ? builtin_pipeline(pipeline, n, k) : pipeline_from_json(read_json_file(pipeline_file));
  auto [r, trace] = p.run(g);
  auto cert = reduction_certificate(g, r, trace);
  if (gl.json_out) {
    emit_json(envelope("reduce", {{"pipeline", p.name()}, {"input_hash", graph_hash(g)}},
                       {{"output_hash", graph_hash(r)}, {"trace", trace.to_json()}}, 0, t.seconds()),
              "-");
    if (!out.empty()) emit_graph(r, out, {"pipeline " + p.name(), "input " + graph_hash(g)});
  } else {
    emit_graph(r, out, {"pipeline " + p.name(), "input " + graph_hash(g)});
  }
  if (!trace_path.empty()) emit_json(cert, trace_path);
  if (verify && verify_written(trace_path, cert, search_options(gl)) != kExitOk) return kExitError;
  return kExitOk;
}

int cmd_topo(const Globals& gl, const std::string& complex, const std::string& in) {
  Timer t;
  auto g = read_graph_file(in);
  Z2Complex k;
  if (complex == "box")
    k = box_complex(g);
  else if (complex == "hom")
    k = hom_complex(g);
  else
    throw std::invalid_argument("--complex must be box or hom");
  auto report = topology_report(k);
  if (gl.json_out) {
    emit_json(envelope("topo", {{"complex", complex}, {"input_hash", graph_hash(g)}}, report, 0, t.seconds()), "-");
  } else {
    std::cout << "vertices " << report["vertices"] << ", maximal faces " << k.maximal_faces.size() << "\n"
              << "euler " << report["euler"] << ", betti0 " << report["betti0"] << ", betti1 " << report["betti1"]
              << ", torsion1 " << report["torsion1"].dump() << ", free " << report["free"] << "\n";
    if (report["free"].get<bool>())
      std::cout << "quotient: betti1 " << report["quotient"]["betti1"] << ", torsion1 "
                << report["quotient"]["torsion1"].dump() << "\n";
  }
  return kExitOk;
}

int cmd_wind(const Globals& gl, const std::string& hom_path, const std::string& target) {
  auto [p, q] = parse_fraction(target);
  auto loaded = load_polymorphism(read_json_file(hom_path));
  const int n = static_cast<int>(loaded.source.size());
  if (!(loaded.source == cycle(n))) throw std::invalid_argument("source graph is not the standard cycle C_n");
  if (!(loaded.target == circular_clique(p, q)))
    throw std::invalid_argument("target graph is not K_{" + target + "}");
  auto w = winding_profile(loaded.f, n, p, q);
  auto j = winding_json(w);
  if (gl.json_out) {
    emit_json(envelope("wind", {{"target", target}, {"cycle", n}, {"arity", loaded.f.arity}}, j, 0, 0), "-");
  } else {
    std::cout << "a = " << j["a"].dump() << ", d = " << w.d << "\n";
    for (const auto& v : w.violations()) std::cout << "violation: " << v << "\n";
  }
  return w.violations().empty() ? kExitOk : kExitError;
}

int cmd_check(const Globals& gl, const std::string& suite, std::uint64_t seed) {
  SuiteOptions o;
  o.jobs = gl.jobs;
  o.seed = seed;
  if (gl.budget) o.node_budget = *gl.budget;
  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  json props = json::array();
  bool all_pass = true;
  Timer t;
  for (const auto& name : names) {
    for (const auto& r : run_suite(name, o)) {
      all_pass = all_pass && r.pass;
      props.push_back(to_json(r, false));
      if (!gl.json_out) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.suite << "/" << r.property << " (" << r.cases << " cases";
        if (!r.detail.empty()) std::cout << "; " << r.detail;
        std::cout << ")\n";
        if (r.counterexample) std::cout << "  counterexample: " << *r.counterexample << "\n";
      }
    }
  }
  if (gl.json_out)
    emit_json(envelope("check", {{"suite", suite}, {"seed", seed}}, {{"pass", all_pass}, {"properties", props}}, 0,
                       t.seconds()),
              "-");
  return all_pass ? kExitOk : kExitError;
}

int cmd_verify(const Globals& gl, const std::string& path) {
  auto j = read_json_file(path);
  auto v = verify_certificate(j, search_options(gl));
  if (gl.json_out)
    emit_json(envelope("verify", {{"type", j.value("type", "")}}, {{"ok", v.ok}, {"message", v.message}}, 0, 0),
              "-");
  else
    std::cout << (v.ok ? "ok: " : "FAILED: ") << v.message << "\n";
  return v.ok ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adjhom: graph homomorphisms, adjoint functors and box complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_flag("--json", gl.json_out, "Machine-readable JSON report on stdout");
  app.add_option("--budget", gl.budget, "Search-node budget (default: ADJHOM_BUDGET or 1e8)");
  app.add_option("--cap", gl.cap, "Vertex cap for constructions (default 2000000)");
  app.add_option("--jobs", gl.jobs, "Worker threads for check")->check(CLI::PositiveNumber);

  std::string spec, in, out, from, to, functor, pipeline = "identity", pipeline_file, trace, complex = "box",
                                                   hom_path, target, suite, cert;
  std::size_t arity = 1, n = 3, k = 3;
  std::uint64_t seed = SuiteOptions{}.seed;
  bool verify = false, no_fold = false;
  std::function<int()> run;

  auto* gen = app.add_subcommand("gen", "Generate a named graph (clique:4, cycle:5, circular:7/2, kneser:5,2, path:3)");
  gen->add_option("spec", spec)->required();
  gen->add_option("--out", out);
  gen->callback([&] { run = [&] { return cmd_gen(gl, spec, out); }; });

  auto* apply = app.add_subcommand("apply", "Apply a functor (delta, delta_l, delta_r, sym, sub, lambda:k, gamma:k, omega:k, universal)");
  apply->add_option("--functor", functor)->required();
  apply->add_option("--in", in)->required();
  apply->add_option("--out", out);
  apply->callback([&] { run = [&] { return cmd_apply(gl, functor, in, out); }; });

  auto* hom = app.add_subcommand("hom", "Search for a homomorphism (or polymorphism with --arity)");
  hom->add_option("--from", from)->required();
  hom->add_option("--to", to)->required();
  hom->add_option("--arity", arity)->check(CLI::PositiveNumber);
  hom->add_flag("--no-fold", no_fold, "Disable dominated-vertex folding");
  hom->add_option("--out", out, "Write the certificate here");
  hom->add_flag("--verify", verify, "Re-validate the emitted certificate");
  hom->callback([&] { run = [&] { return cmd_hom(gl, from, to, arity, no_fold, out, verify); }; });

  auto* chi = app.add_subcommand("chi", "Chromatic number");
  chi->add_option("--in", in)->required();
  chi->add_option("--out", out, "Write the certificate here");
  chi->add_flag("--verify", verify);
  chi->callback([&] { run = [&] { return cmd_chi(gl, in, out, verify); }; });

  auto* reduce = app.add_subcommand("reduce", "Run a reduction pipeline on an instance");
  reduce->add_option("--pipeline", pipeline, "arc, universal, log-chain, identity, lambda:k, gamma-omega:k");
  reduce->add_option("--pipeline-file", pipeline_file, "JSON pipeline: {\"name\", \"steps\":[{\"step\",\"params\"}]}");
  reduce->add_option("-n", n, "Template parameter n");
  reduce->add_option("-k", k, "Template parameter k");
  reduce->add_option("--in", in)->required();
  reduce->add_option("--out", out);
  reduce->add_option("--trace", trace, "Write the trace certificate here");
  reduce->add_flag("--verify", verify, "Replay the trace");
  reduce->callback([&] { run = [&] { return cmd_reduce(gl, pipeline, pipeline_file, n, k, in, out, trace, verify); }; });

  auto* topo = app.add_subcommand("topo", "Homology of the box or hom complex");
  topo->add_option("--complex", complex)->check(CLI::IsMember({"box", "hom"}));
  topo->add_option("--in", in)->required();
  topo->callback([&] { run = [&] { return cmd_topo(gl, complex, in); }; });

  auto* wind = app.add_subcommand("wind", "Winding profile of a polymorphism C_n^L -> K_{p/q}");
  wind->add_option("--hom", hom_path)->required();
  wind->add_option("--target", target)->required();
  wind->callback([&] { run = [&] { return cmd_wind(gl, hom_path, target); }; });

  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("suite", suite, "adjunctions, poljak-rodl, topology, winding, minion or all")->required();
  check->add_option("--seed", seed);
  check->callback([&] { run = [&] { return cmd_check(gl, suite, seed); }; });

  auto* ver = app.add_subcommand("verify", "Re-validate a certificate");
  ver->add_option("certificate", cert)->required();
  ver->callback([&] { run = [&] { return cmd_verify(gl, cert); }; });

  try {
    app.parse(argc, argv);
    if (gl.cap) set_vertex_cap(*gl.cap);
    return run();
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  } catch (const BudgetExhausted& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
