#include <doctest.h>

#include <numeric>

#include "adjhom/functors.hpp"
#include "adjhom/topology.hpp"

using namespace adjhom;

namespace {

Z2Complex from_faces(std::size_t n, std::vector<Face> faces, std::vector<std::uint32_t> inv = {}) {
  if (inv.empty()) {
    inv.resize(n);
    std::iota(inv.begin(), inv.end(), 0u);
  }
  return {n, std::move(faces), std::move(inv)};
}

// Oracle: bicliques by brute force over all pairs of vertex subsets.
std::size_t brute_maximal_bicliques(const Graph& g) {
  const std::size_t n = g.size();
  auto ok = [&](unsigned a, unsigned b) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if ((a >> u & 1u) && (b >> v & 1u) && !g.has_arc(u, v)) return false;
    return a && b;
  };
  std::size_t count = 0;
  for (unsigned a = 1; a < (1u << n); ++a)
    for (unsigned b = 1; b < (1u << n); ++b) {
      if (!ok(a, b)) continue;
      bool maximal = true;
      for (Vertex x = 0; x < n && maximal; ++x) {
        if (!(a >> x & 1u) && ok(a | 1u << x, b)) maximal = false;
        if (!(b >> x & 1u) && ok(a, b | 1u << x)) maximal = false;
      }
      count += maximal;
    }
  return count;
}

}  // namespace

TEST_CASE("smith normal form") {
  IntMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = 4;
  m.at(1, 0) = 6;
  m.at(1, 1) = 8;
  CHECK(smith_invariants(m) == std::vector<std::int64_t>{2, 4});
  IntMatrix z(3, 2);
  CHECK(smith_invariants(z).empty());
  IntMatrix r(1, 3);
  r.at(0, 0) = 6;
  r.at(0, 1) = 10;
  r.at(0, 2) = 15;
  CHECK(smith_invariants(r) == std::vector<std::int64_t>{1});
  IntMatrix big(2, 2);
  big.at(0, 0) = std::int64_t{1} << 62;
  big.at(0, 1) = (std::int64_t{1} << 62) - 1;
  big.at(1, 0) = -(std::int64_t{1} << 62);
  big.at(1, 1) = (std::int64_t{1} << 62);
  CHECK_THROWS_AS(smith_invariants(big), std::overflow_error);
}

TEST_CASE("homology of small complexes") {
  auto tri = homology(from_faces(3, {{0, 1, 2}}));
  CHECK(tri.euler == 1);
  CHECK(tri.betti0 == 1);
  CHECK(tri.betti1 == 0);
  auto hollow = homology(from_faces(3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(hollow.betti1 == 1);
  CHECK(hollow.euler == 0);
  auto two = homology(from_faces(4, {{0, 1}, {2, 3}}));
  CHECK(two.betti0 == 2);
  CHECK(two.face_counts == std::vector<std::size_t>{4, 2});
}

TEST_CASE("face enumeration is capped") {
  Face huge(21);
  std::iota(huge.begin(), huge.end(), 0u);
  CHECK_THROWS_AS(faces_by_dimension(from_faces(21, {huge})), CapExceeded);
  auto k = from_faces(5, {{0, 1, 2, 3, 4}});
  auto faces = faces_by_dimension(k, 1);
  CHECK(faces.size() == 2);
  CHECK(faces[1].size() == 10);
}

TEST_CASE("maximal bicliques match brute force") {
  for (const auto& g : {clique(3), clique(4), cycle(5), path(4), circular_clique(7, 2), Graph(3, {{0, 1}, {1, 2}, {2, 2}})})
    CHECK(maximal_bicliques(g).size() == brute_maximal_bicliques(g));
}

TEST_CASE("box complex examples") {
  auto k2 = box_complex(clique(2));
  CHECK(k2.vertex_count == 4);
  CHECK(k2.maximal_faces.size() == 2);
  CHECK(homology(k2).betti0 == 2);

  auto h3 = homology(box_complex(clique(3)));
  CHECK(h3.euler == 0);
  CHECK(h3.betti0 == 1);
  CHECK(h3.betti1 == 1);
  CHECK(h3.torsion1.empty());

  auto h4 = homology(box_complex(clique(4)));
  CHECK(h4.euler == 2);
  CHECK(h4.betti1 == 0);
  CHECK(h4.torsion1.empty());

  CHECK_THROWS(box_complex(Graph(2, {{0, 1}})));
}

TEST_CASE("box complex table") {
  struct Row {
    Graph g;
    std::size_t b0, b1;
    std::int64_t euler;
  };
  for (const auto& row : {Row{clique(2), 2, 0, 2}, Row{clique(3), 1, 1, 0}, Row{clique(4), 1, 0, 2},
                          Row{clique(5), 1, 0, 0}, Row{cycle(3), 1, 1, 0}, Row{cycle(5), 1, 1, 0},
                          Row{cycle(7), 1, 1, 0}, Row{cycle(9), 1, 1, 0}, Row{circular_clique(7, 2), 1, 1, 0}}) {
    auto h = homology(box_complex(row.g));
    CHECK(h.betti0 == row.b0);
    CHECK(h.betti1 == row.b1);
    CHECK(h.euler == row.euler);
    CHECK(h.torsion1.empty());
  }
  CHECK(homology(box_complex(kneser(5, 2))).torsion1.empty());
}

TEST_CASE("hom complex examples") {
  auto c5 = hom_complex(cycle(5));
  CHECK(c5.vertex_count == 10);
  auto h = homology(c5);
  CHECK(h.euler == 0);
  CHECK(h.betti1 == 1);

  auto k2 = hom_complex(clique(2));
  CHECK(k2.vertex_count == 2);
  CHECK(k2.maximal_faces == std::vector<Face>{{0}, {1}});
  CHECK(k2.involution == std::vector<std::uint32_t>{1, 0});

  // Face rule: (u,v),(u',v') in a face implies (u,v') is an arc.
  auto g = circular_clique(7, 2);
  for (const auto& f : hom_complex(g).maximal_faces)
    for (auto a : f)
      for (auto b : f) CHECK(g.has_arc(g.arcs()[a].first, g.arcs()[b].second));
}

TEST_CASE("freeness") {
  CHECK(is_free(box_complex(clique(3))));
  CHECK_FALSE(is_free(box_complex(Graph(1, {{0, 0}}))));
  CHECK(is_free(from_faces(2, {{0}, {1}}, {1, 0})));
  CHECK_THROWS(quotient(box_complex(Graph(1, {{0, 0}}))));
}

TEST_CASE("quotients") {
  auto p = homology(quotient(box_complex(clique(4))));
  CHECK(p.betti1 == 0);
  CHECK(p.torsion1 == std::vector<std::int64_t>{2});
  CHECK(p.euler == 1);
  auto c = homology(quotient(box_complex(clique(3))));
  CHECK(c.betti1 == 1);
  auto pt = homology(quotient(from_faces(2, {{0}, {1}}, {1, 0})));
  CHECK(pt.face_counts == std::vector<std::size_t>{1});
  CHECK(pt.betti0 == 1);
}

TEST_CASE("box and hom complexes agree") {
  for (const auto& g : {clique(2), clique(3), clique(4), cycle(5), cycle(7), path(4), circular_clique(7, 2), kneser(5, 2)}) {
    auto a = homology(box_complex(g)), b = homology(hom_complex(g));
    CHECK(a.betti0 == b.betti0);
    CHECK(a.betti1 == b.betti1);
    CHECK(a.torsion1 == b.torsion1);
  }
}

TEST_CASE("induced maps") {
  auto id = induced_map(projection(5, 1, 0), cycle(5), cycle(5));
  for (std::uint32_t i = 0; i < id.image.size(); ++i) CHECK(id.image[i] == i);
  auto chk = check_induced_map(id, cycle(5), cycle(5));
  CHECK(chk.simplicial);
  CHECK(chk.equivariant);

  auto pol = enumerate_polymorphisms(cycle(5), clique(3), 2, 50);
  for (const auto& f : pol.members) {
    auto m = induced_map(f, cycle(5), clique(3));
    auto c = check_induced_map(m, cycle(5), clique(3));
    CHECK(c.simplicial);
    CHECK(c.equivariant);
    auto d = induced_map(minor(f, {{0, 0}, 1}), cycle(5), clique(3));
    for (std::size_t a = 0; a < 10; ++a) CHECK(d.image[a] == m.image[a * 10 + a]);
  }
  CHECK_THROWS(induced_map(projection(5, 1, 0), cycle(5), clique(2)));
}

TEST_CASE("winding numbers") {
  // C5 as K_{5/2} via i -> 2i; one lap has winding +1 or -1.
  auto f = cycle_to_circular(5);
  std::vector<Vertex> lap, twice;
  for (int t = 0; t <= 5; ++t) lap.push_back(f.table[t % 5]);
  for (int t = 0; t <= 10; ++t) twice.push_back(f.table[t % 5]);
  auto w = winding(lap, 5, 2);
  CHECK((w == 1 || w == -1));
  CHECK(winding(twice, 5, 2) == 2 * w);
  CHECK(winding(std::vector<Vertex>{0, 2, 0}, 5, 2) == 0);
  CHECK(winding(std::vector<Vertex>{0, 2, 4, 1, 3, 0}, 5, 2) == 1);  // +q steps count positively
  CHECK(winding(std::vector<Vertex>{0, 3, 1, 4, 2, 0}, 5, 2) == -1);
  CHECK(winding(std::vector<Vertex>{0, 1, 2, 0}, 3, 1) == 1);
  CHECK(winding(std::vector<Vertex>{0, 3, 6, 2, 5, 1, 4, 0}, 7, 2) == 1);
  CHECK(winding(std::vector<Vertex>{0, 2, 4, 6, 1, 3, 5, 0}, 7, 2) == 3);
  CHECK(winding(std::vector<Vertex>{0, 3, 0, 4, 0}, 7, 2) == 0);  // backtracks cancel

  CHECK_THROWS(winding(std::vector<Vertex>{0, 2, 0}, 6, 2));
  CHECK_THROWS(winding(std::vector<Vertex>{0, 2, 4}, 5, 2));
  CHECK_THROWS(winding(std::vector<Vertex>{0, 1, 0}, 5, 2));
  CHECK_THROWS(winding(std::vector<Vertex>{0, 4, 0}, 9, 2));
}

TEST_CASE("winding profiles") {
  auto id = cycle_to_circular(5);
  auto w1 = winding_profile(id, 5, 5, 2);
  CHECK(w1.a.size() == 1);
  CHECK((w1.a[0] == 2 || w1.a[0] == -2));
  CHECK(w1.d * 2 == w1.a[0]);
  CHECK(w1.violations().empty());

  // Projection to coordinate 1 of C5^2, composed with the identification.
  Polymorphism p{5, 2, 5, {}};
  for (Vertex x = 0; x < 5; ++x)
    for (Vertex y = 0; y < 5; ++y) p.table.push_back(id.table[x]);
  auto w2 = winding_profile(p, 5, 5, 2);
  CHECK(w2.a == std::vector<std::int64_t>{w1.a[0], 0});
  CHECK(w2.d == w1.d);

  auto m = winding_profile(precompose_mirror(p, {0, 1}), 5, 5, 2);
  CHECK(m.d == -w2.d);
  CHECK(m.a == std::vector<std::int64_t>{-w2.a[0], 0});

  WindingProfile bad{{2, 2}, 1};
  CHECK(bad.violations().size() == 1);
  WindingProfile worse{{1, 0}, 2};
  CHECK(worse.violations().size() == 3);

  CHECK_THROWS(winding_profile(projection(5, 1, 0), 5, 3, 1));
  CHECK_THROWS(winding_profile(id, 4, 5, 2));
}
