#include <doctest.h>

#include <set>

#include "adjhom/functors.hpp"
#include "adjhom/hom.hpp"
#include "adjhom/suites.hpp"

using namespace adjhom;

namespace {

// Oracle for walk_power: boolean matrix power.
std::vector<std::vector<bool>> walk_matrix(const Graph& g, std::size_t k) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (Vertex v = 0; v < n; ++v) reach[v][v] = true;
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (Vertex s = 0; s < n; ++s)
      for (Vertex m = 0; m < n; ++m)
        if (reach[s][m])
          for (auto t : g.out(m)) next[s][t] = true;
    reach = std::move(next);
  }
  return reach;
}

}  // namespace

TEST_CASE("central binomial") {
  CHECK(central_binomial(0) == 1);
  CHECK(central_binomial(3) == 3);
  CHECK(central_binomial(4) == 6);
  CHECK(central_binomial(6) == 20);
  for (std::size_t k = 1; k <= 10; ++k) CHECK(central_binomial(2 * k) == 2 * central_binomial(2 * k - 1));
  CHECK(central_binomial(66) == 7219428434016265740ull);
  CHECK_THROWS_AS(central_binomial(70), std::overflow_error);
}

TEST_CASE("arc digraph") {
  auto d3 = arc_digraph(clique(3));
  CHECK(d3.size() == 6);
  CHECK(chromatic_number(symmetric_closure(d3)).value == 3);
  auto c5 = cycle(5);
  CHECK(arc_digraph(c5).size() == 2 * c5.edge_count());
  // Arc ((u,v),(v,w)) exactly for composable pairs.
  auto g = Graph(3, {{0, 1}, {1, 2}, {1, 1}});
  auto d = arc_digraph(g);
  for (std::size_t a = 0; a < g.arc_count(); ++a)
    for (std::size_t b = 0; b < g.arc_count(); ++b)
      CHECK(d.has_arc(static_cast<Vertex>(a), static_cast<Vertex>(b)) == (g.arcs()[a].second == g.arcs()[b].first));
  CHECK(maps_to(arc_digraph(clique(6)), clique(4)));
  CHECK_FALSE(maps_to(symmetric_closure(arc_digraph(clique(7))), clique(4)));
}

TEST_CASE("delta_L") {
  auto single = delta_left(Graph(1));
  CHECK(single.size() == 2);
  CHECK(single.arc_count() == 1);
  auto arc = delta_left(Graph(2, {{0, 1}}));
  CHECK(arc.size() == 3);
  CHECK(arc.arc_count() == 2);
  CHECK(are_isomorphic(arc, Graph(3, {{0, 1}, {1, 2}})));
  // A loop glues t_v to s_v.
  auto loop = delta_left(Graph(1, {{0, 0}}));
  CHECK(loop.size() == 1);
  CHECK(loop.has_loop());
}

TEST_CASE("delta_R") {
  auto k1 = Graph(1);
  auto verts = delta_right_vertices(k1);
  CHECK(verts.size() == 3);  // (0,0), (0,{0}), ({0},0)
  auto dr = delta_right(k1);
  // ({0},0) is index 2 in (S,T) order; no loop since T is empty.
  CHECK(verts[2].sources == 1);
  CHECK(verts[2].targets == 0);
  CHECK_FALSE(dr.has_arc(2, 2));
  for (const auto& v : delta_right_vertices(cycle(4))) {
    for (Vertex s = 0; s < 4; ++s)
      for (Vertex t = 0; t < 4; ++t)
        if ((v.sources >> s & 1u) && (v.targets >> t & 1u)) CHECK(cycle(4).has_arc(s, t));
  }
  CHECK(maps_to(symmetric_part(delta_right(clique(3))), clique(static_cast<int>(central_binomial(3)))));
}

TEST_CASE("sym and sub") {
  Graph arc(2, {{0, 1}});
  CHECK(symmetric_closure(arc) == clique(2));
  CHECK(symmetric_part(arc).arc_count() == 0);
  CHECK(symmetric_part(arc).size() == 2);
  auto d = Graph(3, {{0, 1}, {1, 0}, {1, 2}});
  CHECK(maps_to(symmetric_part(d), d));
  CHECK(maps_to(d, symmetric_closure(d)));
}

TEST_CASE("subdivision") {
  CHECK(are_isomorphic(subdivide(clique(3), 3), cycle(9)));
  CHECK(subdivide(cycle(5), 1) == cycle(5));
  for (const auto& g : {clique(4), cycle(5), kneser(5, 2)})
    for (std::size_t k : {1u, 3u, 5u}) CHECK(subdivide(g, k).size() == g.size() + (k - 1) * g.edge_count());
  CHECK(are_isomorphic(subdivide(Graph(1, {{0, 0}}), 3), cycle(3)));
  CHECK_THROWS(subdivide(clique(3), 2));
  CHECK_THROWS(subdivide(Graph(2, {{0, 1}}), 3));
}

TEST_CASE("walk power") {
  CHECK(walk_power(cycle(5), 3) == clique(5) );
  CHECK(walk_power(cycle(7), 1) == cycle(7));
  auto g3 = walk_power(clique(3), 3);
  for (Vertex v = 0; v < 3; ++v) CHECK(g3.has_loop(v));
  for (const auto& g : {cycle(7), path(4), kneser(5, 2), Graph(3, {{0, 1}, {1, 2}, {2, 2}})})
    for (std::size_t k : {1u, 3u, 5u}) {
      auto m = walk_matrix(g, k);
      auto w = walk_power(g, k);
      for (Vertex u = 0; u < g.size(); ++u)
        for (Vertex v = 0; v < g.size(); ++v) CHECK(w.has_arc(u, v) == m[u][v]);
    }
  CHECK_THROWS(walk_power(cycle(5), 2));
}

TEST_CASE("omega") {
  CHECK(omega(clique(3), 3).size() == 24);
  CHECK(omega(circular_clique(7, 2), 3).size() == 896);
  for (const auto& g : {clique(3), cycle(5)}) {
    auto om = omega(g, 3);
    auto proj = omega_projection(g, 3);
    CHECK(is_homomorphism(om, g, VertexMap{g.size(), proj}));
  }
  // Arc rule checked directly on Omega_3(K3).
  auto g = clique(3);
  auto verts = omega_vertices(g, 3);
  auto om = omega(g, 3);
  auto fully = [&](std::uint64_t a, std::uint64_t b) {
    for (Vertex x = 0; x < 3; ++x)
      for (Vertex y = 0; y < 3; ++y)
        if ((a >> x & 1u) && (b >> y & 1u) && !g.has_arc(x, y)) return false;
    return true;
  };
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = 0; j < verts.size(); ++j) {
      const auto& a = verts[i];
      const auto& b = verts[j];
      std::uint64_t a0 = 1ull << a.root, b0 = 1ull << b.root;
      bool want = (a0 & ~b.sets[0]) == 0 && (b0 & ~a.sets[0]) == 0 && fully(a.sets[0], b.sets[0]);
      CHECK(om.has_arc(static_cast<Vertex>(i), static_cast<Vertex>(j)) == want);
    }
  CHECK(omega_vertices(clique(2), 5).size() == 2 * 4 * 4);
  CHECK_THROWS(omega(clique(3), 1));
  CHECK_THROWS(omega(clique(3), 4));
}

TEST_CASE("omega of K_{7/2} is 3-colourable") {
  auto r = find_homomorphism(omega(circular_clique(7, 2), 3), clique(3));
  CHECK(r.outcome == Outcome::found);
  CHECK(r.stats.folded > 0);
}

TEST_CASE("functor spec parsing") {
  CHECK(FunctorSpec::parse("gamma:3").to_string() == "gamma:3");
  CHECK(FunctorSpec::parse("delta").kind == FunctorSpec::Kind::delta);
  CHECK(FunctorSpec::parse("lambda:5").k == 5);
  CHECK_THROWS(FunctorSpec::parse("gamma"));
  CHECK_THROWS(FunctorSpec::parse("gamma:x"));
  CHECK_THROWS(FunctorSpec::parse("warp:3"));
  CHECK(apply_functor(FunctorSpec::parse("gamma:3"), cycle(5)) == clique(5));
  CHECK(apply_functor(FunctorSpec::parse("universal"), clique(3)) == clique(4));
}

TEST_CASE("adjunctions on a reduced corpus") {
  auto sym = graph_corpus(3, CorpusKind::symmetric);
  for (const auto& g : sym)
    for (const auto& h : sym) {
      CHECK(maps_to(subdivide(g, 3), h) == maps_to(g, walk_power(h, 3)));
      CHECK(maps_to(walk_power(g, 3), h) == maps_to(g, omega(h, 3)));
    }
  auto di = graph_corpus(2, CorpusKind::digraph);
  for (const auto& d : di)
    for (const auto& e : di) {
      CHECK(maps_to(delta_left(d), e) == maps_to(d, arc_digraph(e)));
      CHECK(maps_to(arc_digraph(d), e) == maps_to(d, delta_right(e)));
      CHECK(maps_to(symmetric_closure(d), e) == maps_to(d, symmetric_part(e)));
    }
}
