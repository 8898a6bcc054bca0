// Acceptance run: one PASS/FAIL line per criterion. Exit status is non-zero
// if any criterion other than the stretch search fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include "adjhom/functors.hpp"
#include "adjhom/hom.hpp"
#include "adjhom/suites.hpp"
#include "adjhom/topology.hpp"

using namespace adjhom;

namespace {

struct Verdict {
  bool pass = false;
  std::string note;
};

std::map<std::string, std::vector<PropertyResult>> cache;

const std::vector<PropertyResult>& suite(const std::string& name) {
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  SuiteOptions o;
  o.jobs = std::max(1u, std::thread::hardware_concurrency());
  return cache[name] = run_suite(name, o);
}

/// All properties of `name` whose label starts with one of `prefixes` pass.
Verdict properties(const std::string& name, const std::vector<std::string>& prefixes) {
  std::size_t cases = 0, matched = 0;
  for (const auto& r : suite(name)) {
    bool wanted = prefixes.empty();
    for (const auto& p : prefixes) wanted = wanted || r.property.rfind(p, 0) == 0;
    if (!wanted) continue;
    ++matched;
    cases += r.cases;
    if (!r.pass) return {false, r.property + ": " + r.counterexample.value_or("?")};
  }
  if (matched == 0) return {false, "no matching properties"};
  return {true, std::to_string(matched) + " properties, " + std::to_string(cases) + " cases"};
}

Verdict known_facts() {
  if (!are_isomorphic(walk_power(cycle(5), 3), clique(5))) return {false, "Gamma_3 C5 is not K5"};
  if (!maps_to(arc_digraph(clique(6)), clique(4))) return {false, "delta K6 -/-> K4"};
  SearchOptions o;
  o.node_budget = 10'000'000;
  auto ddk4 = symmetric_closure(arc_digraph(arc_digraph(clique(4))));
  auto r = find_homomorphism(ddk4, clique(3), o);
  if (ddk4.size() != 36 || r.outcome != adjhom::Outcome::found) return {false, "delta delta K4 not 3-coloured"};
  auto k = find_homomorphism(clique(4), circular_clique(7, 2));
  if (k.outcome != adjhom::Outcome::none) return {false, "K4 -> K_7/2 not refuted"};
  return {true, "delta delta K4 coloured in " + std::to_string(r.stats.nodes) + " nodes"};
}

Verdict stretch_omega() {
  SearchOptions o;
  o.node_budget = 100'000'000;
  auto om = omega(circular_clique(7, 2), 3);
  auto r = find_homomorphism(om, clique(3), o);
  std::ostringstream s;
  s << om.size() << " vertices, " << r.stats.folded << " folded, " << r.stats.components << " components, "
    << r.stats.nodes << " nodes";
  bool ok = r.outcome == adjhom::Outcome::found && r.map && is_homomorphism(om, clique(3), *r.map);
  return {ok, s.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    bool stretch;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Poljak-Rodl identity", 120, false, [] { return properties("poljak-rodl", {"chi-arc-digraph"}); }},
      {2, "colouring transfers", 60, false,
       [] { return properties("poljak-rodl", {"color-push-lift", "delta-K6-four-coloring"}); }},
      {3, "known combinatorial facts", 60, false, known_facts},
      {4, "adjointness biconditionals", 600, false, [] { return properties("adjunctions", {}); }},
      {5, "topology table", 300, false,
       [] { return properties("topology", {"box-complex-table", "petersen-torsion-free", "quotient-projective-plane"}); }},
      {6, "winding suite", 600, false, [] { return properties("winding", {"profile-"}); }},
      {7, "Omega_3(K_7/2) -> K3 (stretch)", 1800, true, stretch_omega},
      {8, "minion closure", 120, false, [] { return properties("minion", {"minor-closure-", "essential-oracle-"}); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > c.limit_seconds) {
      o.pass = false;
      o.note += " (over time limit)";
    }
    const char* tag = o.pass ? "PASS" : (c.stretch ? "WARN" : "FAIL");
    std::printf("[%s] criterion %d: %s (%.2fs) %s\n", tag, c.id, c.name.c_str(), secs, o.note.c_str());
    if (!o.pass && !c.stretch) ++failures;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
