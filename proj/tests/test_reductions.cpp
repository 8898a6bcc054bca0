#include <doctest.h>

#include "adjhom/functors.hpp"
#include "adjhom/reductions.hpp"
#include "adjhom/suites.hpp"

using namespace adjhom;

namespace {

Coloring optimal_coloring(const Graph& g) {
  auto chi = chromatic_number(g);
  REQUIRE(chi.coloring);
  return *chi.coloring;
}

}  // namespace

TEST_CASE("templates require a witness") {
  auto t = PcspTemplate::make(cycle(5), clique(3));
  CHECK(is_homomorphism(t.g, t.h, t.witness));
  CHECK_THROWS_AS(PcspTemplate::make(clique(4), clique(3)), std::invalid_argument);
  CHECK_THROWS(PcspTemplate::cliques(4, 3));
  CHECK(PcspTemplate::cliques(2, 5).witness.image.size() == 2);
}

TEST_CASE("colex unranking") {
  // 2-subsets of [4] in colex order: 01 02 12 03 13 23.
  std::vector<std::uint64_t> want = {0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100};
  for (std::uint64_t r = 0; r < 6; ++r) CHECK(colex_unrank(r, 4, 2) == want[r]);
  CHECK(colex_unrank(0, 5, 0) == 0);
  CHECK_THROWS(colex_unrank(6, 4, 2));
}

TEST_CASE("color push") {
  auto k3 = clique(3);
  auto pushed = color_push(Coloring{3, {0, 1, 2}}, k3, 3);
  CHECK(pushed.colors == 3);
  CHECK(is_proper(symmetric_closure(arc_digraph(k3)), pushed));

  auto k6 = clique(6);
  auto p6 = color_push(Coloring{6, {0, 1, 2, 3, 4, 5}}, k6, 4);
  CHECK(p6.colors == 4);
  CHECK(is_proper(symmetric_closure(arc_digraph(k6)), p6));
  // Arc (0,1): phi(0) = {0,1}, phi(1) = {0,2}; the minimum of the difference is 1.
  CHECK(p6.assignment[k6.arc_index(0, 1)] == 1);

  for (auto c : {Coloring{2, {0, 1}}, Coloring{2, {1, 0}}})
    CHECK(is_proper(symmetric_closure(arc_digraph(clique(2))), color_push(c, clique(2), 2)));

  CHECK_THROWS_AS(color_push(Coloring{3, {0, 0, 1}}, k3, 3), std::invalid_argument);
  CHECK_THROWS_AS(color_push(Coloring{7, {0, 1, 6}}, k3, 4), std::invalid_argument);
}

TEST_CASE("color lift") {
  auto k2 = clique(2);
  auto lifted = color_lift(Coloring{2, {0, 1}}, k2);
  CHECK(lifted.colors == 4);
  CHECK(lifted.assignment[0] != lifted.assignment[1]);

  auto k3 = clique(3);
  auto dk3 = symmetric_closure(arc_digraph(k3));
  auto l3 = color_lift(optimal_coloring(dk3), k3);
  CHECK(is_proper(k3, l3));
  CHECK(l3.colors <= 8);

  auto dk4 = arc_digraph(clique(4));
  auto ddk4 = symmetric_closure(arc_digraph(dk4));
  auto c = optimal_coloring(ddk4);
  CHECK(c.colors == 3);
  auto l4 = color_lift(c, dk4);
  CHECK(is_proper(dk4, l4));
  CHECK(l4.colors == 8);

  CHECK_THROWS_AS(color_lift(Coloring{2, {0, 0}}, k2), std::invalid_argument);
}

TEST_CASE("push then lift round trip on small graphs") {
  for (const auto& g : graph_corpus(4, CorpusKind::symmetric_loopless)) {
    auto c = optimal_coloring(g);
    auto n = poljak_rodl_index(c.colors);
    auto pushed = color_push(Coloring{central_binomial(n), c.assignment}, g, n);
    auto lifted = color_lift(pushed, g);
    CHECK(is_proper(g, lifted));
    CHECK(lifted.colors == (std::size_t{1} << n));
  }
}

TEST_CASE("arc reduction contract") {
  auto [out, trace] = arc_pipeline(3, 3).run(clique(3));
  CHECK(out == arc_digraph(clique(3)));
  CHECK(maps_to(out, clique(3)));
  CHECK(maps_to(arc_digraph(clique(6)), clique(4)));
  CHECK(maps_to(arc_digraph(cycle(5)), clique(3)));
  REQUIRE(trace.steps.size() == 1);
  CHECK(trace.steps[0].input_hash == graph_hash(clique(3)));
  CHECK(trace.steps[0].output_hash == graph_hash(out));
}

TEST_CASE("universal and log-chain pipelines") {
  auto up = universal_pipeline(3, 4);
  auto [out, trace] = up.run(cycle(5));
  CHECK(out == add_universal_vertex(cycle(5)));
  CHECK(maps_to(out, clique(4)));
  CHECK(up.target_template()->g == clique(4));

  auto lc = log_chain_pipeline(2, 8);
  CHECK(lc.steps().size() == 2);
  CHECK(lc.source_template()->h == clique(8));
  CHECK(lc.target_template()->g == clique(2));
  CHECK(lc.target_template()->h == clique(3));
  auto [o2, t2] = lc.run(cycle(6));
  CHECK(o2 == arc_digraph(cycle(6)));
  CHECK(t2.steps.size() == 2);
  CHECK_THROWS(log_chain_pipeline(3, 4));
}

TEST_CASE("identity pipeline") {
  auto [out, trace] = identity_pipeline().run(kneser(5, 2));
  CHECK(out == kneser(5, 2));
  CHECK(trace.steps.empty());
}

TEST_CASE("compose rejects template mismatches") {
  auto a = arc_pipeline(3, 3).steps().front();
  auto u = universal_pipeline(2, 2).steps().front();
  CHECK_THROWS_AS(Pipeline::compose("bad", {a, u}), std::invalid_argument);
  auto ok = Pipeline::compose("ok", {a, universal_pipeline(3, 3).steps().front()});
  CHECK(ok.steps().size() == 2);
  CHECK_THROWS(ReductionStep::relax(PcspTemplate::cliques(3, 3), PcspTemplate::cliques(2, 3)));
}

TEST_CASE("trace json round trip and replay") {
  auto p = Pipeline::compose("mix", {ReductionStep::apply(FunctorSpec::parse("lambda:3")),
                                     ReductionStep::product(clique(3)),
                                     ReductionStep::apply(FunctorSpec::parse("gamma:3"))});
  auto [out, trace] = p.run(cycle(5));
  auto j = trace.to_json();
  auto back = ReductionTrace::from_json(nlohmann::json::parse(j.dump()));
  CHECK(replay(back, cycle(5)) == out);
  CHECK_THROWS(replay(back, cycle(7)));
  j["steps"][1]["input_hash"] = "0000000000000000";
  CHECK_THROWS(ReductionTrace::from_json(j));
  auto rebuilt = pipeline_from_json(nlohmann::json{{"name", "mix"}, {"steps", trace.to_json()["steps"]}});
  CHECK(rebuilt.run(cycle(5)).first == out);
}

TEST_CASE("reduce_adjoint") {
  // F -> Gamma_3 G implies Lambda_3 F -> G, with F = C9 and G = C5.
  auto f = cycle(9), g = cycle(5);
  REQUIRE(maps_to(f, walk_power(g, 3)));
  auto [lf, trace] = reduce_adjoint(ReductionStep::apply(FunctorSpec::parse("lambda:3")), f);
  CHECK(maps_to(lf, g));
  CHECK(trace.steps.size() == 1);
  CHECK_THROWS(reduce_adjoint(ReductionStep::apply(FunctorSpec::parse("omega:3")), f));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto a = random_graph(5, rng), b = random_graph(5, rng);
    if (maps_to(a, b)) CHECK(maps_to(arc_digraph(a), arc_digraph(b)));
    auto da = reduce_adjoint(ReductionStep::apply(FunctorSpec::parse("delta")), a).first;
    if (maps_to(symmetric_closure(da), clique(3))) CHECK(maps_to(a, clique(3)));
  }
}

TEST_CASE("builtin pipeline names") {
  CHECK(builtin_pipeline("gamma-omega:3", 0, 0).run(cycle(5)).first == clique(5));
  CHECK(builtin_pipeline("lambda:3", 0, 0).run(clique(3)).first.size() == 9);
  CHECK_THROWS(builtin_pipeline("nope", 3, 3));
}
