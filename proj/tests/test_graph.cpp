#include <doctest.h>

#include <set>

#include "adjhom/graph.hpp"

using namespace adjhom;

namespace {

// Brute-force oracle: arc set of a graph as a std::set.
std::set<Arc> arc_set(const Graph& g) { return {g.arcs().begin(), g.arcs().end()}; }

}  // namespace

TEST_CASE("graph construction merges duplicates and rejects bad endpoints") {
  Graph g(3, {{0, 1}, {0, 1}, {2, 2}});
  CHECK(g.arc_count() == 2);
  CHECK(g.has_loop());
  CHECK(g.has_loop(2));
  CHECK_FALSE(g.is_symmetric());
  CHECK(g.arc_index(0, 1) == 0);
  CHECK(g.arc_index(1, 0) == Graph::npos);
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), std::out_of_range);
}

TEST_CASE("symmetry, degrees and neighbourhood sets") {
  auto g = undirected(3, {{0, 1}, {1, 2}});
  CHECK(g.is_symmetric());
  CHECK(g.edge_count() == 2);
  CHECK(g.out_degree(1) == 2);
  CHECK(g.in_set(1).count() == 2);
  CHECK(g.out_set(0).test(1));
}

TEST_CASE("families: counts") {
  auto k3 = clique(3);
  CHECK(k3.size() == 3);
  CHECK(k3.arc_count() == 6);
  CHECK_FALSE(k3.has_loop());
  CHECK(clique(4).arc_count() == 12);

  auto k72 = circular_clique(7, 2);
  CHECK(k72.edge_count() == 14);  // degree 4: neighbours i+-2, i+-3
  for (Vertex i = 0; i < 7; ++i)
    for (Vertex j = 0; j < 7; ++j) {
      int d = (static_cast<int>(j) - static_cast<int>(i) + 7) % 7;
      CHECK(k72.has_arc(i, j) == (d >= 2 && d <= 5));
    }

  auto pet = kneser(5, 2);
  CHECK(pet.size() == 10);
  CHECK(pet.edge_count() == 15);
  CHECK(cycle(5).edge_count() == 5);
  CHECK(path(3).edge_count() == 2);
}

TEST_CASE("families: isomorphisms") {
  CHECK(are_isomorphic(circular_clique(5, 2), cycle(5)));
  for (int p = 3; p <= 8; ++p) CHECK(are_isomorphic(circular_clique(p, 1), clique(p)));
  CHECK_FALSE(are_isomorphic(cycle(6), undirected(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}})));
  CHECK(are_isomorphic(cycle(6), relabel(cycle(6), std::vector<Vertex>{3, 5, 1, 0, 2, 4})));
}

TEST_CASE("families: parameter errors") {
  CHECK_THROWS(circular_clique(4, 2));
  CHECK_THROWS(kneser(3, 2));
  CHECK_THROWS(cycle(2));
  CHECK_THROWS(GraphFamily::parse("clique"));
  CHECK_THROWS(GraphFamily::parse("circular:7"));
  CHECK_THROWS(GraphFamily::parse("torus:3"));
  CHECK(GraphFamily::parse("kneser:5,2").to_string() == "kneser:5,2");
  CHECK(GraphFamily::parse("circular:7/2").to_string() == "circular:7/2");
  CHECK(build(GraphFamily::parse("clique:4")) == clique(4));
}

TEST_CASE("tensor product matches the definition") {
  auto g = cycle(5), h = path(3);
  auto p = tensor_product(g, h);
  REQUIRE(p.size() == 15);
  std::set<Arc> want;
  for (auto [a, b] : g.arcs())
    for (auto [c, d] : h.arcs()) want.emplace(a * 3 + c, b * 3 + d);
  CHECK(arc_set(p) == want);

  auto kk = tensor_product(clique(2), clique(2));
  CHECK(kk.edge_count() == 2);
  CHECK(tensor_product(cycle(5), Graph(1)).arc_count() == 0);
  auto c55 = tensor_product(cycle(5), cycle(5));
  for (Vertex v = 0; v < 25; ++v) CHECK(c55.out_degree(v) == 4);
}

TEST_CASE("powers and tuple encoding") {
  CHECK(power(clique(2), 1) == clique(2));
  CHECK(power(cycle(5), 2) == tensor_product(cycle(5), cycle(5)));
  CHECK(power(clique(3), 3).size() == 27);
  auto t = decode_tuple(17, 3, 3);
  CHECK(t == std::vector<Vertex>{1, 2, 2});
  CHECK(encode_tuple(t, 3) == 17);
  CHECK_THROWS(power(clique(2), 0));
}

TEST_CASE("vertex cap guards exponential constructions") {
  auto old = vertex_cap();
  set_vertex_cap(100);
  CHECK_THROWS_AS(power(clique(3), 5), CapExceeded);
  CHECK_THROWS_AS(exponential(clique(3), clique(5)), CapExceeded);
  set_vertex_cap(old);
  CHECK(checked_pow(2, 70) == static_cast<std::size_t>(-1));
}

TEST_CASE("exponential graph matches the definition") {
  auto h = clique(2), f = Graph(1);
  auto e = exponential(h, f);
  CHECK(e.size() == 2);
  for (Vertex a = 0; a < 2; ++a)
    for (Vertex b = 0; b < 2; ++b) CHECK(e.has_arc(a, b));  // complete with loops: F has no arcs

  auto k = exponential(clique(2), clique(2));
  CHECK(k.size() == 4);
  // Maps K2 -> K2 encoded (f(0), f(1)); constants are 0 = (0,0) and 3 = (1,1).
  CHECK_FALSE(k.has_arc(0, 0));
  CHECK_FALSE(k.has_arc(3, 3));
  for (Vertex a = 0; a < 4; ++a)
    for (Vertex b = 0; b < 4; ++b) {
      bool want = h.has_arc(a >> 1, b & 1) && h.has_arc(a & 1, b >> 1);
      CHECK(k.has_arc(a, b) == want);
    }
}

TEST_CASE("universal vertex") {
  for (int n = 1; n <= 6; ++n) CHECK(add_universal_vertex(clique(n)) == clique(n + 1));
  CHECK(add_universal_vertex(Graph(1)) == clique(2));
}

TEST_CASE("text format round trip") {
  auto k2 = parse_graph("graph 2 1\n0 1\n");
  CHECK(k2 == clique(2));
  auto arc = parse_graph("digraph 2 1\n0 1\n");
  CHECK(arc.arc_count() == 1);
  CHECK_FALSE(arc.is_symmetric());

  for (const auto& g : {clique(4), cycle(7), kneser(5, 2), arc, Graph(3, {{0, 0}, {1, 2}})})
    CHECK(parse_graph(serialize(g)) == g);
  auto canon = serialize(parse_graph("# x\ngraph 3 2\n\n2 1\n0 1\n"));
  CHECK(canon == "graph 3 2\n0 1\n1 2\n");
  CHECK(serialize(clique(2), {"note"}).starts_with("# note\n"));
  CHECK(graph_hash(clique(3)).size() == 16);
  CHECK(graph_hash(clique(3)) != graph_hash(cycle(4)));
}

TEST_CASE("text format errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("grph 2 1\n0 1\n") == 1);
  CHECK(line_of("graph 2 1\n0 5\n") == 2);
  CHECK(line_of("digraph 2 2\n0 1\n0 1\n") == 3);
  CHECK(line_of("graph 2 2\n0 1\n") != 0);
  CHECK(line_of("graph 2 1\n0 x\n") == 2);
}
