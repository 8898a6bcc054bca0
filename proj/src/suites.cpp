#include "adjhom/suites.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "adjhom/functors.hpp"
#include "adjhom/reductions.hpp"
#include "adjhom/topology.hpp"

namespace adjhom {

using nlohmann::json;

// ----------------------------------------------------------------- corpora

namespace {

std::uint64_t adjacency_code(const Graph& g, const std::vector<Vertex>& perm) {
  const std::size_t n = g.size();
  std::uint64_t code = 0;
  for (const auto& [u, v] : g.arcs()) code |= std::uint64_t{1} << (perm[u] * n + perm[v]);
  return code;
}

std::uint64_t canonical_code(const Graph& g) {
  std::vector<Vertex> perm(g.size());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::uint64_t best = ~std::uint64_t{0};
  do best = std::min(best, adjacency_code(g, perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Graph from_code(std::size_t n, std::uint64_t code) {
  std::vector<Arc> arcs;
  for (std::size_t b = 0; b < n * n; ++b)
    if (code >> b & 1u) arcs.emplace_back(static_cast<Vertex>(b / n), static_cast<Vertex>(b % n));
  return Graph(n, std::move(arcs));
}

}  // namespace

std::vector<Graph> graph_corpus(std::size_t max_n, CorpusKind kind) {
  if (max_n > 5) throw std::invalid_argument("graph_corpus supports at most 5 vertices");
  std::vector<Graph> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    // Free positions: unordered pairs for symmetric kinds, ordered pairs otherwise.
    std::vector<Arc> slots;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) {
        if (kind != CorpusKind::digraph && v < u) continue;
        if (kind == CorpusKind::symmetric_loopless && u == v) continue;
        slots.emplace_back(u, v);
      }
    std::set<std::uint64_t> classes;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
      std::vector<Arc> arcs;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (mask >> i & 1u) {
          arcs.push_back(slots[i]);
          if (kind != CorpusKind::digraph) arcs.emplace_back(slots[i].second, slots[i].first);
        }
      classes.insert(canonical_code(Graph(n, std::move(arcs))));
    }
    for (auto c : classes) out.push_back(from_code(n, c));
  }
  return out;
}

Graph random_graph(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Arc> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return undirected(n, edges);
}

Graph random_digraph(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution arc(0.4), loop(0.1);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u == v ? loop(rng) : arc(rng)) arcs.emplace_back(u, v);
  return Graph(n, std::move(arcs));
}

std::size_t poljak_rodl_index(std::size_t chi) {
  std::size_t n = 0;
  while (central_binomial(n) < chi) ++n;
  return n;
}

// ------------------------------------------------------------ thread pool

std::optional<std::string> first_failure(std::size_t count, unsigned jobs,
                                         const std::function<std::optional<std::string>(std::size_t)>& check) {
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{count};
  std::mutex mu;
  std::map<std::size_t, std::string> failures;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      if (i > best.load()) break;  // a smaller failing index is already known
      std::optional<std::string> msg;
      try {
        msg = check(i);
      } catch (const std::exception& e) {
        msg = std::string("exception: ") + e.what();
      }
      if (!msg) continue;
      std::lock_guard lock(mu);
      failures.emplace(i, std::move(*msg));
      std::size_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failures.empty()) return std::nullopt;
  return "case " + std::to_string(failures.begin()->first) + ": " + failures.begin()->second;
}

// ------------------------------------------------------------------ helpers

namespace {

struct Ctx {
  std::string suite;
  SuiteOptions opts;
  std::vector<PropertyResult> results;

  SearchOptions search() const { return SearchOptions{opts.node_budget, true}; }
  bool hom(const Graph& g, const Graph& h) const { return maps_to(g, h, search()); }

  void property(const std::string& name, std::size_t count,
                const std::function<std::optional<std::string>(std::size_t)>& check,
                std::string detail = {}) {
    auto t0 = std::chrono::steady_clock::now();
    PropertyResult r{suite, name, true, count, std::move(detail), std::nullopt, 0};
    try {
      if (auto f = first_failure(count, opts.jobs, check)) {
        r.pass = false;
        r.counterexample = *f;
      }
    } catch (const std::exception& e) {
      r.pass = false;
      r.counterexample = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
};

std::string show(const Graph& g) { return serialize(g); }
std::string show(const Graph& a, const Graph& b) { return serialize(a) + "---\n" + serialize(b); }

std::optional<std::string> expect(bool ok, const std::function<std::string()>& why) {
  if (ok) return std::nullopt;
  return why();
}

template <class T>
std::vector<std::pair<T, T>> all_pairs(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<std::pair<T, T>> out;
  for (const auto& x : a)
    for (const auto& y : b) out.emplace_back(x, y);
  return out;
}

/// Small digraph pairs: exhaustive up to 3 vertices plus seeded 4-vertex pairs.
std::vector<std::pair<Graph, Graph>> digraph_pairs(std::uint64_t seed) {
  auto small = graph_corpus(3, CorpusKind::digraph);
  auto pairs = all_pairs(small, small);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 100; ++i) {
    auto a = random_digraph(4, rng);
    auto b = random_digraph(4, rng);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

/// Loopless corpus for the chromatic identities: exhaustive up to 5
/// vertices plus 30 seeded graphs on 6 or 7 vertices.
std::vector<Graph> chromatic_corpus(std::uint64_t seed) {
  auto out = graph_corpus(5, CorpusKind::symmetric_loopless);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 30; ++i) out.push_back(random_graph(6 + i % 2, rng));
  return out;
}

std::size_t exact_chi(const Graph& g, const SearchOptions& opts) {
  auto c = chromatic_number(g, opts);
  if (c.kind != ChromaticNumber::Kind::exact)
    throw std::runtime_error("chromatic number not exact for\n" + show(g));
  return c.value;
}

bool naive_hom_exists(const Graph& g, const Graph& h) {
  const std::size_t n = g.size(), k = h.size();
  if (n == 0) return true;
  if (k == 0) return false;
  std::vector<Vertex> img(n, 0);
  while (true) {
    bool ok = std::all_of(g.arcs().begin(), g.arcs().end(),
                          [&](const Arc& a) { return h.has_arc(img[a.first], img[a.second]); });
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && ++img[i] == k) img[i++] = 0;
    if (i == n) return false;
  }
}

// -------------------------------------------------------------- adjunctions

void suite_adjunctions(Ctx& c) {
  const auto sym4 = graph_corpus(4, CorpusKind::symmetric);
  const auto sym3 = graph_corpus(3, CorpusKind::symmetric);

  for (std::size_t k : {3u, 5u}) {
    auto pairs = all_pairs(sym4, sym4);
    c.property("lambda-gamma-k" + std::to_string(k), pairs.size(), [&, k](std::size_t i) {
      const auto& [g, h] = pairs[i];
      bool left = c.hom(subdivide(g, k), h), right = c.hom(g, walk_power(h, k));
      return expect(left == right, [&] { return "Lambda G -> H is " + std::to_string(left) + "\n" + show(g, h); });
    });
  }

  {
    auto pairs = all_pairs(sym4, sym3);
    c.property("gamma-omega-k3", pairs.size(), [&](std::size_t i) {
      const auto& [g, h] = pairs[i];
      bool left = c.hom(walk_power(g, 3), h), right = c.hom(g, omega(h, 3));
      return expect(left == right, [&] { return "Gamma G -> H is " + std::to_string(left) + "\n" + show(g, h); });
    });
  }

  c.property("lambda-to-omega-k3", sym4.size(), [&](std::size_t i) {
    const auto& g = sym4[i];
    auto lg = subdivide(g, 3);
    if (!c.hom(lg, omega(g, 3))) return std::optional<std::string>("Lambda G -/-> Omega G\n" + show(g));
    return expect(c.hom(walk_power(lg, 3), g), [&] { return "Gamma Lambda G -/-> G\n" + show(g); });
  });

  const auto dpairs = digraph_pairs(c.opts.seed);
  c.property("sym-sub", dpairs.size(), [&](std::size_t i) {
    const auto& [d, e] = dpairs[i];
    bool left = c.hom(symmetric_closure(d), e), right = c.hom(d, symmetric_part(e));
    return expect(left == right, [&] { return "sym D -> E is " + std::to_string(left) + "\n" + show(d, e); });
  });
  c.property("deltaL-delta", dpairs.size(), [&](std::size_t i) {
    const auto& [d, e] = dpairs[i];
    bool left = c.hom(delta_left(d), e), right = c.hom(d, arc_digraph(e));
    return expect(left == right, [&] { return "delta_L D -> E is " + std::to_string(left) + "\n" + show(d, e); });
  });
  c.property("delta-deltaR", dpairs.size(), [&](std::size_t i) {
    const auto& [d, e] = dpairs[i];
    bool left = c.hom(arc_digraph(d), e), right = c.hom(d, delta_right(e));
    return expect(left == right, [&] { return "delta D -> E is " + std::to_string(left) + "\n" + show(d, e); });
  });

  {
    // F x G -> H iff G -> H^F.
    c.property("product-exponential", sym3.size() * sym4.size() * sym3.size(), [&](std::size_t i) {
      const auto& f = sym3[i / (sym4.size() * sym3.size())];
      const auto& g = sym4[i / sym3.size() % sym4.size()];
      const auto& h = sym3[i % sym3.size()];
      bool left = c.hom(tensor_product(f, g), h), right = c.hom(g, exponential(h, f));
      return expect(left == right, [&] {
        return "F x G -> H is " + std::to_string(left) + "\n" + show(f) + "---\n" + show(g, h);
      });
    });
  }

  {
    auto pairs = all_pairs(sym4, sym4);
    c.property("tensor-commutative", pairs.size(), [&](std::size_t i) {
      const auto& [g, h] = pairs[i];
      std::vector<Vertex> perm(g.size() * h.size());
      for (Vertex a = 0; a < g.size(); ++a)
        for (Vertex b = 0; b < h.size(); ++b) perm[a * h.size() + b] = static_cast<Vertex>(b * g.size() + a);
      return expect(relabel(tensor_product(g, h), perm) == tensor_product(h, g), [&] { return show(g, h); });
    });
    auto triples = all_pairs(sym3, sym3);
    c.property("tensor-associative", triples.size() * sym3.size(), [&](std::size_t i) {
      const auto& [f, g] = triples[i / sym3.size()];
      const auto& h = sym3[i % sym3.size()];
      // Both bracketings use the same row-major index (f, g, h).
      return expect(tensor_product(tensor_product(f, g), h) == tensor_product(f, tensor_product(g, h)),
                    [&] { return show(f) + "---\n" + show(g, h); });
    });
  }

  c.property("circular-p1-is-clique", 7, [&](std::size_t i) {
    int p = static_cast<int>(i) + 2;
    if (p == 2) return expect(undirected(2, {{0, 1}}) == clique(2), [] { return std::string("K2"); });
    return expect(are_isomorphic(circular_clique(p, 1), clique(p)), [&] { return "p = " + std::to_string(p); });
  });
}

// -------------------------------------------------------------- Poljak-Rodl

void suite_poljak_rodl(Ctx& c) {
  const auto corpus = chromatic_corpus(c.opts.seed);
  const auto opts = c.search();

  c.property("chi-arc-digraph", corpus.size(), [&](std::size_t i) {
    const auto& g = corpus[i];
    auto chi = exact_chi(g, opts);
    auto chi_delta = exact_chi(symmetric_closure(arc_digraph(g)), opts);
    auto want = poljak_rodl_index(chi);
    return expect(chi_delta == want, [&] {
      return "chi(G) = " + std::to_string(chi) + ", chi(delta G) = " + std::to_string(chi_delta) +
             ", expected " + std::to_string(want) + "\n" + show(g);
    });
  }, "exhaustive <= 5 vertices plus 30 random graphs on 6-7 vertices");

  c.property("color-push-lift", corpus.size(), [&](std::size_t i) {
    const auto& g = corpus[i];
    auto chi = chromatic_number(g, opts);
    if (chi.kind != ChromaticNumber::Kind::exact) return std::optional<std::string>("chi not exact\n" + show(g));
    auto n = poljak_rodl_index(chi.value);
    Coloring base{central_binomial(n), chi.coloring->assignment};
    auto pushed = color_push(base, g, n);
    if (!is_proper(symmetric_closure(arc_digraph(g)), pushed) || pushed.colors != n)
      return std::optional<std::string>("pushed coloring improper\n" + show(g));
    auto lifted = color_lift(pushed, g);
    return expect(is_proper(g, lifted) && lifted.colors == (std::size_t{1} << n),
                  [&] { return "lifted coloring improper\n" + show(g); });
  });

  c.property("delta-K6-four-coloring", 1, [&](std::size_t) {
    Coloring c6{6, {0, 1, 2, 3, 4, 5}};
    auto pushed = color_push(c6, clique(6), 4);
    return expect(pushed.colors == 4 && is_proper(symmetric_closure(arc_digraph(clique(6))), pushed),
                  [] { return std::string("push of K6 failed"); });
  });

  c.property("delta-sym-Kb-to-Kn", 3, [&](std::size_t i) {
    int n = static_cast<int>(i) + 2;
    auto kb = clique(static_cast<int>(central_binomial(n)));
    return expect(c.hom(arc_digraph(symmetric_closure(kb)), clique(n)), [&] { return "n = " + std::to_string(n); });
  });

  // Pipeline contract: I -> G implies out -> G', and out -> H' implies I -> H.
  std::vector<Pipeline> pipelines = {arc_pipeline(2, 2), arc_pipeline(3, 3), arc_pipeline(3, 4),
                                     universal_pipeline(2, 3), universal_pipeline(3, 3),
                                     log_chain_pipeline(2, 4), log_chain_pipeline(2, 8), identity_pipeline()};
  const auto small = graph_corpus(4, CorpusKind::symmetric_loopless);
  c.property("pipeline-soundness", pipelines.size() * small.size(), [&](std::size_t i) {
    const auto& p = pipelines[i / small.size()];
    const auto& inst = small[i % small.size()];
    auto [out, trace] = p.run(inst);
    if (!(replay(trace, inst) == out)) return std::optional<std::string>(p.name() + ": replay differs");
    auto src = p.source_template(), dst = p.target_template();
    if (!src || !dst) return std::optional<std::string>();
    if (c.hom(inst, src->g) && !c.hom(out, dst->g))
      return std::optional<std::string>(p.name() + ": YES instance mapped to NO\n" + show(inst));
    if (c.hom(out, dst->h) && !c.hom(inst, src->h))
      return std::optional<std::string>(p.name() + ": NO instance mapped to YES\n" + show(inst));
    return std::optional<std::string>();
  });

  const auto sym5 = graph_corpus(5, CorpusKind::symmetric);
  const std::vector<Graph> targets = {clique(2), clique(3), clique(4)};
  c.property("hom-completeness", sym5.size() * targets.size(), [&](std::size_t i) {
    const auto& g = sym5[i / targets.size()];
    const auto& h = targets[i % targets.size()];
    bool fast = c.hom(g, h), naive = naive_hom_exists(g, h);
    return expect(fast == naive, [&] { return "search " + std::to_string(fast) + " vs naive\n" + show(g, h); });
  });

  c.property("circular-clique-order", 1, [&](std::size_t) -> std::optional<std::string> {
    std::vector<std::pair<int, int>> fr;
    for (int p = 3; p <= 9; ++p)
      for (int q = 1; 2 * q < p; ++q)
        if (std::gcd(p, q) == 1) fr.emplace_back(p, q);
    for (auto [p, q] : fr)
      for (auto [r, s] : fr) {
        bool want = p * s <= r * q;
        if (c.hom(circular_clique(p, q), circular_clique(r, s)) != want)
          return "K_" + std::to_string(p) + "/" + std::to_string(q) + " vs K_" + std::to_string(r) + "/" +
                 std::to_string(s);
      }
    return std::nullopt;
  });

  std::mt19937_64 rng(c.opts.seed + 1);
  std::vector<std::array<Graph, 3>> triples;
  for (int i = 0; i < 60; ++i) triples.push_back({random_graph(5, rng), random_graph(5, rng), random_graph(4, rng)});
  c.property("hom-transitivity-and-chi-monotone", triples.size(), [&](std::size_t i) {
    const auto& [a, b, d] = triples[i];
    bool ab = c.hom(a, b), bd = c.hom(b, d);
    if (ab && bd && !c.hom(a, d)) return std::optional<std::string>("transitivity\n" + show(a, b) + "---\n" + show(d));
    if (ab && exact_chi(a, opts) > exact_chi(b, opts))
      return std::optional<std::string>("chi not monotone\n" + show(a, b));
    return std::optional<std::string>();
  });
}

// ------------------------------------------------------------------ topology

struct TableRow {
  std::string name;
  Graph g;
  std::size_t betti0, betti1;
  std::int64_t euler;
};

void suite_topology(Ctx& c) {
  const std::vector<TableRow> table = {
      {"K2", clique(2), 2, 0, 2},  {"K3", clique(3), 1, 1, 0},  {"K4", clique(4), 1, 0, 2},
      {"K5", clique(5), 1, 0, 0},  {"C5", cycle(5), 1, 1, 0},   {"C7", cycle(7), 1, 1, 0},
      {"C9", cycle(9), 1, 1, 0},   {"K7/2", circular_clique(7, 2), 1, 1, 0}};
  c.property("box-complex-table", table.size(), [&](std::size_t i) {
    const auto& row = table[i];
    auto h = homology(box_complex(row.g));
    return expect(h.betti0 == row.betti0 && h.betti1 == row.betti1 && h.euler == row.euler && h.torsion1.empty(),
                  [&] {
                    return row.name + ": got (" + std::to_string(h.betti0) + "," + std::to_string(h.betti1) + "," +
                           std::to_string(h.torsion1.size()) + " torsion," + std::to_string(h.euler) + ")";
                  });
  });
  c.property("petersen-torsion-free", 1, [&](std::size_t) {
    auto h = homology(box_complex(kneser(5, 2)));
    return expect(h.torsion1.empty(), [] { return std::string("torsion in H1 of Bx(Petersen)"); });
  });
  c.property("quotient-projective-plane", 1, [&](std::size_t) {
    auto h = homology(quotient(box_complex(clique(4))));
    return expect(h.betti1 == 0 && h.torsion1 == std::vector<std::int64_t>{2},
                  [] { return std::string("Bx(K4)/Z2 is not the projective plane"); });
  });
  c.property("quotient-circle", 1, [&](std::size_t) {
    auto h = homology(quotient(box_complex(clique(3))));
    return expect(h.betti0 == 1 && h.betti1 == 1 && h.torsion1.empty(), [] { return std::string("Bx(K3)/Z2"); });
  });

  std::vector<Graph> family = {clique(2), clique(3), clique(4), clique(5), cycle(3),  cycle(5),
                               cycle(7),  cycle(9),  path(3),   path(4),   circular_clique(7, 2),
                               circular_clique(8, 3), kneser(5, 2)};
  for (const auto& g : graph_corpus(4, CorpusKind::symmetric_loopless)) family.push_back(g);
  c.property("box-free-for-loopless", family.size(), [&](std::size_t i) {
    return expect(is_free(box_complex(family[i])) && is_free(hom_complex(family[i])), [&] { return show(family[i]); });
  });
  c.property("hom-box-agreement", family.size(), [&](std::size_t i) {
    auto a = homology(box_complex(family[i])), b = homology(hom_complex(family[i]));
    return expect(a.betti0 == b.betti0 && a.betti1 == b.betti1 && a.torsion1 == b.torsion1,
                  [&] { return show(family[i]); });
  });

  c.property("hom-complex-product", 1, [&](std::size_t) -> std::optional<std::string> {
    auto g = cycle(5), h = clique(3);
    auto gh = tensor_product(g, h);
    auto kg = hom_complex(g), kh = hom_complex(h), kgh = hom_complex(gh);
    if (kgh.vertex_count != kg.vertex_count * kh.vertex_count) return "vertex count";
    if (kgh.maximal_faces.size() != kg.maximal_faces.size() * kh.maximal_faces.size()) return "maximal face count";
    // Each maximal face must be the product of its two projections.
    std::set<Face> fg(kg.maximal_faces.begin(), kg.maximal_faces.end());
    std::set<Face> fh(kh.maximal_faces.begin(), kh.maximal_faces.end());
    for (const auto& f : kgh.maximal_faces) {
      std::set<std::uint32_t> pg, ph;
      for (auto a : f) {
        auto [x, y] = gh.arcs()[a];
        pg.insert(static_cast<std::uint32_t>(g.arc_index(x / h.size(), y / h.size())));
        ph.insert(static_cast<std::uint32_t>(h.arc_index(x % h.size(), y % h.size())));
      }
      if (pg.size() * ph.size() != f.size()) return "face is not a product";
      if (!fg.count(Face(pg.begin(), pg.end())) || !fh.count(Face(ph.begin(), ph.end())))
        return "projection is not maximal";
    }
    return std::nullopt;
  });

  c.property("induced-identity", 1, [&](std::size_t) {
    auto m = induced_map(projection(5, 1, 0), cycle(5), cycle(5));
    std::vector<std::uint32_t> id(m.image.size());
    std::iota(id.begin(), id.end(), 0u);
    return expect(m.image == id, [] { return std::string("identity does not induce identity"); });
  });

  const auto pol = enumerate_polymorphisms(cycle(5), clique(3), 2, 400);
  c.property("induced-simplicial-equivariant", pol.members.size(), [&](std::size_t i) {
    auto m = induced_map(pol.members[i], cycle(5), clique(3));
    auto chk = check_induced_map(m, cycle(5), clique(3));
    return expect(chk.simplicial && chk.equivariant, [&] { return "member " + std::to_string(i); });
  }, "Pol(C5,K3), arity 2");
  c.property("induced-preserves-diagonal-minor", pol.members.size(), [&](std::size_t i) {
    const auto& f = pol.members[i];
    auto m2 = induced_map(f, cycle(5), clique(3));
    auto m1 = induced_map(minor(f, {{0, 0}, 1}), cycle(5), clique(3));
    const std::size_t arcs = m1.source_arcs;
    for (std::size_t a = 0; a < arcs; ++a)
      if (m1.image[a] != m2.image[a * arcs + a]) return std::optional<std::string>("arc " + std::to_string(a));
    return std::optional<std::string>();
  });
}

// ------------------------------------------------------------------- winding

std::vector<Polymorphism> polymorphism_sample(const Graph& g, const Graph& h, std::size_t arity,
                                              std::uint64_t seed, bool& complete) {
  auto set = enumerate_polymorphisms(g, h, arity, 10'001);
  complete = set.members.size() <= 10'000 && set.complete;
  if (complete) return std::move(set.members);
  std::vector<Polymorphism> out;
  for (auto& m : sample_homomorphisms(power(g, arity), h, 200, seed))
    out.push_back(Polymorphism{g.size(), arity, h.size(), std::move(m.image)});
  return out;
}

void suite_winding(Ctx& c) {
  struct Case {
    int n, p, q;
    std::size_t arity;
  };
  std::vector<Case> cases;
  for (int n : {5, 7})
    for (auto [p, q] : {std::pair{3, 1}, std::pair{5, 2}, std::pair{7, 2}})
      for (std::size_t L : {1u, 2u}) cases.push_back({n, p, q, L});

  for (const auto& cs : cases) {
    bool complete = false;
    auto g = cycle(cs.n), h = circular_clique(cs.p, cs.q);
    auto fs = polymorphism_sample(g, h, cs.arity, c.opts.seed + cs.n * 100 + cs.p * 10 + cs.arity, complete);
    const std::string label = "C" + std::to_string(cs.n) + "-K" + std::to_string(cs.p) + "/" +
                              std::to_string(cs.q) + "-L" + std::to_string(cs.arity);
    const double h_pow_n = std::pow(static_cast<double>(h.size()), cs.n);
    c.property("profile-" + label, fs.size(), [&, cs](std::size_t i) -> std::optional<std::string> {
      const auto& f = fs[i];
      auto w = winding_profile(f, cs.n, cs.p, cs.q);
      if (auto v = w.violations(); !v.empty()) return v.front();
      auto nonzero = std::count_if(w.a.begin(), w.a.end(), [](auto x) { return x != 0; });
      if (static_cast<double>(nonzero) >= h_pow_n) return "too many non-zero a";
      std::vector<std::size_t> all(cs.arity);
      std::iota(all.begin(), all.end(), 0);
      auto m = winding_profile(precompose_mirror(f, all), cs.n, cs.p, cs.q);
      for (auto& x : m.a) x = -x;
      if (m.d != -w.d || m.a != w.a) return "mirror does not negate the profile";
      if (cs.arity == 2) {
        auto merged = winding_profile(minor(f, {{0, 0}, 1}), cs.n, cs.p, cs.q);
        if (merged.a.front() != w.a[0] + w.a[1]) return "merged coordinate is not additive";
      }
      return std::nullopt;
    }, complete ? "full enumeration" : "200 seeded samples");
  }
}

// -------------------------------------------------------------------- minion

std::vector<std::size_t> brute_essential(const Polymorphism& f) {
  std::vector<std::size_t> out;
  const std::size_t n = f.base_size;
  for (std::size_t c = 0; c < f.arity; ++c) {
    bool essential = false;
    for (std::size_t i = 0; i < f.table.size() && !essential; ++i) {
      auto t = decode_tuple(i, n, f.arity);
      for (Vertex a = 0; a < n && !essential; ++a) {
        auto u = t;
        u[c] = a;
        essential = f(u) != f(t);
      }
    }
    if (essential) out.push_back(c);
  }
  return out;
}

void suite_minion(Ctx& c) {
  struct Pair {
    std::string name;
    Graph g, h;
  };
  const std::vector<Pair> pairs = {{"K2-K2", clique(2), clique(2)}, {"C5-K3", cycle(5), clique(3)}};
  for (const auto& pr : pairs) {
    std::vector<std::set<Polymorphism>> by_arity(3);
    std::vector<Polymorphism> all;
    for (std::size_t L = 1; L <= 2; ++L) {
      auto set = enumerate_polymorphisms(pr.g, pr.h, L);
      by_arity[L].insert(set.members.begin(), set.members.end());
      all.insert(all.end(), set.members.begin(), set.members.end());
    }
    c.property("minor-closure-" + pr.name, all.size(), [&, all, by_arity](std::size_t i) -> std::optional<std::string> {
      const auto& f = all[i];
      for (std::size_t n = 1; n <= 2; ++n)
        for (const auto& pi : all_minor_maps(f.arity, n))
          if (!by_arity[n].count(minor(f, pi))) return "minor of member " + std::to_string(i) + " escapes";
      return std::nullopt;
    }, std::to_string(by_arity[1].size()) + " unary, " + std::to_string(by_arity[2].size()) + " binary");
    c.property("essential-oracle-" + pr.name, all.size(), [&, all](std::size_t i) {
      return expect(essential_coordinates(all[i]) == brute_essential(all[i]),
                    [&] { return "member " + std::to_string(i); });
    });
  }
  c.property("pol-K2-K2-binary-count", 1, [&](std::size_t) {
    auto n = enumerate_polymorphisms(clique(2), clique(2), 2).members.size();
    return expect(n == 4, [&] { return "found " + std::to_string(n); });
  });
}

}  // namespace

std::vector<std::string> suite_names() { return {"adjunctions", "poljak-rodl", "topology", "winding", "minion"}; }

std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& opts) {
  Ctx c{name, opts, {}};
  if (name == "adjunctions") suite_adjunctions(c);
  else if (name == "poljak-rodl") suite_poljak_rodl(c);
  else if (name == "topology") suite_topology(c);
  else if (name == "winding") suite_winding(c);
  else if (name == "minion") suite_minion(c);
  else throw std::invalid_argument("unknown suite '" + name + "'");
  return std::move(c.results);
}

json to_json(const PropertyResult& r, bool with_timing) {
  json j{{"suite", r.suite}, {"property", r.property}, {"pass", r.pass}, {"cases", r.cases}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

}  // namespace adjhom
