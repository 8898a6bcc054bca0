#include "adjhom/hom.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <random>
#include <set>
#include <string>

namespace adjhom {

std::optional<Arc> first_violation(const Graph& g, const Graph& h, const VertexMap& m) {
  if (m.image.size() != g.size() || m.target_size != h.size()) return Arc{0, 0};
  for (Vertex v = 0; v < g.size(); ++v)
    if (m.image[v] >= h.size()) return Arc{v, v};
  for (const auto& [u, v] : g.arcs())
    if (!h.has_arc(m.image[u], m.image[v])) return Arc{u, v};
  return std::nullopt;
}

std::optional<Arc> first_conflict(const Graph& g, const Coloring& c) {
  if (c.assignment.size() != g.size()) return Arc{0, 0};
  for (Vertex v = 0; v < g.size(); ++v)
    if (c.assignment[v] >= c.colors) return Arc{v, v};
  for (const auto& [u, v] : g.arcs())
    if (c.assignment[u] == c.assignment[v]) return Arc{u, v};
  return std::nullopt;
}

VertexMap to_vertex_map(const Coloring& c) {
  return {c.colors, {c.assignment.begin(), c.assignment.end()}};
}

Coloring to_coloring(const VertexMap& m) {
  return {m.target_size, {m.image.begin(), m.image.end()}};
}

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("ADJHOM_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 100'000'000;
}

namespace {

struct Aborted {};

/// Binary CSP "map these source vertices into H", over local indices.
class Csp {
 public:
  Csp(const Graph& g, std::span<const Vertex> vertices, const Graph& h)
      : m_(h.size()), vars_(vertices.begin(), vertices.end()) {
    std::vector<std::size_t> local(g.size(), npos);
    for (std::size_t i = 0; i < vars_.size(); ++i) local[vars_[i]] = i;
    out_.resize(vars_.size());
    in_.resize(vars_.size());
    loop_.assign(vars_.size(), false);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      for (auto w : g.out(vars_[i]))
        if (local[w] != npos) {
          if (local[w] == i)
            loop_[i] = true;
          else
            out_[i].push_back(static_cast<std::uint32_t>(local[w]));
        }
      for (auto w : g.in(vars_[i]))
        if (local[w] != npos && local[w] != i) in_[i].push_back(static_cast<std::uint32_t>(local[w]));
    }
    h_out_.reserve(m_);
    h_in_.reserve(m_);
    h_loops_ = Bitset(m_);
    for (Vertex a = 0; a < m_; ++a) {
      h_out_.push_back(h.out_set(a));
      h_in_.push_back(h.in_set(a));
      if (h.has_loop(a)) h_loops_.set(a);
    }
  }

  std::size_t size() const { return vars_.size(); }
  Vertex var(std::size_t i) const { return vars_[i]; }

  using Domains = std::vector<Bitset>;

  /// Initial domains after unary (loop) constraints and full propagation.
  bool initial(Domains& dom) const {
    dom.assign(vars_.size(), Bitset(m_, true));
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (loop_[i]) dom[i] &= h_loops_;
      if (dom[i].none()) return false;
      all.push_back(i);
    }
    return propagate(dom, all);
  }

  bool propagate(Domains& dom, std::vector<std::size_t> queue) const {
    std::vector<bool> queued(vars_.size(), false);
    for (auto i : queue) queued[i] = true;
    std::deque<std::size_t> q(queue.begin(), queue.end());
    Bitset support(m_);
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      queued[x] = false;
      auto revise = [&](const std::vector<std::uint32_t>& nbrs, const std::vector<Bitset>& rel) {
        if (nbrs.empty()) return true;
        support.clear();
        dom[x].for_each([&](std::size_t a) { support |= rel[a]; });
        for (auto w : nbrs) {
          Bitset next = dom[w] & support;
          if (next == dom[w]) continue;
          if (next.none()) return false;
          dom[w] = std::move(next);
          if (!queued[w]) {
            queued[w] = true;
            q.push_back(w);
          }
        }
        return true;
      };
      if (!revise(out_[x], h_out_) || !revise(in_[x], h_in_)) return false;
    }
    return true;
  }

  /// Unfixed variable with the fewest candidates; ties by degree, then index.
  std::size_t choose(const Domains& dom) const {
    std::size_t best = npos, best_count = 0, best_deg = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto c = dom[i].count();
      if (c <= 1) continue;
      auto deg = out_[i].size() + in_[i].size();
      if (best == npos || c < best_count || (c == best_count && deg > best_deg)) {
        best = i;
        best_count = c;
        best_deg = deg;
      }
    }
    return best;
  }

  /// Depth-first search. `visit` receives complete domains (all singletons)
  /// and returns false to stop. Values are tried in `order` if given.
  template <typename Visit, typename Order>
  bool search(const Domains& dom, std::uint64_t& nodes, std::uint64_t budget, Visit& visit,
              Order& order) const {
    auto var = choose(dom);
    if (var == npos) return visit(dom);
    std::vector<std::size_t> values;
    dom[var].for_each([&](std::size_t a) { values.push_back(a); });
    order(values);
    for (auto a : values) {
      if (++nodes > budget) throw Aborted{};
      Domains next = dom;
      next[var] = Bitset(m_);
      next[var].set(a);
      if (!propagate(next, {var})) continue;
      if (!search(next, nodes, budget, visit, order)) return false;
    }
    return true;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t m_;
  std::vector<Vertex> vars_;
  std::vector<std::vector<std::uint32_t>> out_, in_;
  std::vector<bool> loop_;
  std::vector<Bitset> h_out_, h_in_;
  Bitset h_loops_;
};

/// Weakly connected components of the alive vertices, each sorted.
std::vector<std::vector<Vertex>> components(const Graph& g, const std::vector<bool>& alive) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<bool> seen(g.size(), false);
  for (Vertex r = 0; r < g.size(); ++r) {
    if (!alive[r] || seen[r]) continue;
    std::vector<Vertex> comp{r};
    seen[r] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      auto visit = [&](Vertex w) {
        if (alive[w] && !seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
      };
      for (auto w : g.out(comp[i])) visit(w);
      for (auto w : g.in(comp[i])) visit(w);
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace

std::vector<Fold> dominated_folds(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<Bitset> out, in;
  for (Vertex v = 0; v < n; ++v) {
    out.push_back(g.out_set(v));
    in.push_back(g.in_set(v));
  }
  Bitset alive(n, true);
  std::vector<Fold> folds;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex u = 0; u < n; ++u) {
      if (!alive.test(u)) continue;
      Bitset ou = out[u] & alive, iu = in[u] & alive;
      for (Vertex v = 0; v < n; ++v) {
        if (v == u || !alive.test(v)) continue;
        if (ou.is_subset_of(out[v]) && iu.is_subset_of(in[v])) {
          folds.push_back({u, v});
          alive.reset(u);
          changed = true;
          break;
        }
      }
    }
  }
  return folds;
}

HomResult find_homomorphism(const Graph& g, const Graph& h, const SearchOptions& opts) {
  HomResult result;
  const std::size_t n = g.size();
  std::vector<bool> alive(n, true);
  if (opts.fold_dominated) {
    result.folds = dominated_folds(g);
    for (const auto& f : result.folds) alive[f.folded] = false;
    result.stats.folded = result.folds.size();
  }
  if (n > 0 && h.size() == 0) {
    result.outcome = Outcome::none;
    return result;
  }
  VertexMap map{h.size(), std::vector<Vertex>(n, 0)};
  auto comps = components(g, alive);
  result.stats.components = comps.size();
  auto keep_order = [](std::vector<std::size_t>&) {};
  try {
    for (const auto& comp : comps) {
      Csp csp(g, comp, h);
      Csp::Domains dom;
      if (!csp.initial(dom)) {
        result.outcome = Outcome::none;
        return result;
      }
      bool found = false;
      auto visit = [&](const Csp::Domains& d) {
        for (std::size_t i = 0; i < csp.size(); ++i)
          map.image[csp.var(i)] = static_cast<Vertex>(d[i].first());
        found = true;
        return false;
      };
      csp.search(dom, result.stats.nodes, opts.node_budget, visit, keep_order);
      if (!found) {
        result.outcome = Outcome::none;
        return result;
      }
    }
  } catch (const Aborted&) {
    result.outcome = Outcome::unknown;
    return result;
  }
  for (auto it = result.folds.rbegin(); it != result.folds.rend(); ++it)
    map.image[it->folded] = map.image[it->into];
  if (auto bad = first_violation(g, h, map))
    throw std::logic_error("internal error: search produced an invalid witness at arc (" +
                           std::to_string(bad->first) + "," + std::to_string(bad->second) + ")");
  result.outcome = Outcome::found;
  result.map = std::move(map);
  return result;
}

bool maps_to(const Graph& g, const Graph& h, const SearchOptions& opts) {
  auto r = find_homomorphism(g, h, opts);
  if (r.outcome == Outcome::unknown)
    throw BudgetExhausted("homomorphism search exceeded " + std::to_string(opts.node_budget) +
                          " nodes");
  return r.outcome == Outcome::found;
}

namespace {

Coloring greedy_coloring(const Graph& g) {
  std::vector<Vertex> order(g.size());
  for (Vertex v = 0; v < g.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return g.out_degree(a) + g.in_degree(a) > g.out_degree(b) + g.in_degree(b);
  });
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  Coloring c{0, std::vector<std::uint32_t>(g.size(), kUnset)};
  for (auto v : order) {
    std::vector<bool> used(c.colors + 1, false);
    for (auto w : g.out(v))
      if (c.assignment[w] != kUnset) used[c.assignment[w]] = true;
    for (auto w : g.in(v))
      if (c.assignment[w] != kUnset) used[c.assignment[w]] = true;
    std::uint32_t col = 0;
    while (used[col]) ++col;
    c.assignment[v] = col;
    c.colors = std::max<std::size_t>(c.colors, col + 1);
  }
  return c;
}

}  // namespace

ChromaticNumber chromatic_number(const Graph& g, const SearchOptions& opts) {
  ChromaticNumber r;
  if (g.has_loop()) {
    r.kind = ChromaticNumber::Kind::has_loop;
    return r;
  }
  if (g.size() == 0) {
    r.coloring = Coloring{0, {}};
    return r;
  }
  auto greedy = greedy_coloring(g);
  std::size_t lower = g.arc_count() == 0 ? 1 : 2;
  for (std::size_t k = lower; k < greedy.colors; ++k) {
    auto res = find_homomorphism(g, clique(static_cast<int>(k)), opts);
    if (res.outcome == Outcome::found) {
      r.value = r.upper = k;
      r.coloring = to_coloring(*res.map);
      return r;
    }
    if (res.outcome == Outcome::unknown) {
      r.kind = ChromaticNumber::Kind::bounds;
      r.value = k;
      r.upper = greedy.colors;
      r.coloring = greedy;
      return r;
    }
  }
  r.value = r.upper = greedy.colors;
  r.coloring = greedy;
  return r;
}

std::size_t for_each_homomorphism(const Graph& g, const Graph& h,
                                  const std::function<bool(const VertexMap&)>& visit,
                                  std::uint64_t node_budget) {
  std::vector<Vertex> all(g.size());
  for (Vertex v = 0; v < g.size(); ++v) all[v] = v;
  Csp csp(g, all, h);
  Csp::Domains dom;
  if (!csp.initial(dom)) return 0;
  std::size_t count = 0;
  std::uint64_t nodes = 0;
  VertexMap map{h.size(), std::vector<Vertex>(g.size(), 0)};
  auto on_solution = [&](const Csp::Domains& d) {
    for (std::size_t i = 0; i < csp.size(); ++i) map.image[csp.var(i)] = static_cast<Vertex>(d[i].first());
    ++count;
    return visit(map);
  };
  auto keep_order = [](std::vector<std::size_t>&) {};
  try {
    csp.search(dom, nodes, node_budget, on_solution, keep_order);
  } catch (const Aborted&) {
    throw BudgetExhausted("homomorphism enumeration exceeded " + std::to_string(node_budget) +
                          " nodes");
  }
  return count;
}

std::vector<VertexMap> sample_homomorphisms(const Graph& g, const Graph& h, std::size_t count,
                                            std::uint64_t seed) {
  std::vector<Vertex> all(g.size());
  for (Vertex v = 0; v < g.size(); ++v) all[v] = v;
  Csp csp(g, all, h);
  Csp::Domains dom;
  std::vector<VertexMap> samples;
  if (!csp.initial(dom)) return samples;
  std::mt19937_64 rng(seed);
  auto shuffle = [&](std::vector<std::size_t>& values) {
    std::shuffle(values.begin(), values.end(), rng);
  };
  for (std::size_t s = 0; s < count; ++s) {
    VertexMap map{h.size(), std::vector<Vertex>(g.size(), 0)};
    auto on_solution = [&](const Csp::Domains& d) {
      for (std::size_t i = 0; i < csp.size(); ++i)
        map.image[csp.var(i)] = static_cast<Vertex>(d[i].first());
      return false;
    };
    std::uint64_t nodes = 0;
    try {
      csp.search(dom, nodes, default_node_budget(), on_solution, shuffle);
    } catch (const Aborted&) {
      throw BudgetExhausted("homomorphism sampling exceeded the node budget");
    }
    samples.push_back(std::move(map));
  }
  return samples;
}

// ------------------------------------------------------------ polymorphisms

bool is_polymorphism(const Graph& g, const Graph& h, const Polymorphism& f) {
  if (f.base_size != g.size() || f.target_size != h.size()) return false;
  if (f.table.size() != checked_pow(g.size(), f.arity)) return false;
  return is_homomorphism(power(g, f.arity), h, {f.target_size, f.table});
}

PolymorphismSet enumerate_polymorphisms(const Graph& g, const Graph& h, std::size_t arity,
                                        std::size_t limit) {
  if (arity < 1) throw std::invalid_argument("polymorphism arity must be >= 1");
  require_under_cap(checked_pow(g.size(), arity), "polymorphism domain");
  auto domain = power(g, arity);
  PolymorphismSet set;
  for_each_homomorphism(domain, h, [&](const VertexMap& m) {
    if (set.members.size() == limit) {
      set.complete = false;
      return false;
    }
    set.members.push_back({g.size(), arity, h.size(), m.image});
    return true;
  });
  return set;
}

Polymorphism projection(std::size_t base_size, std::size_t arity, std::size_t coordinate) {
  if (coordinate >= arity) throw std::invalid_argument("projection coordinate out of range");
  Polymorphism p{base_size, arity, base_size, {}};
  auto total = checked_pow(base_size, arity);
  p.table.resize(total);
  for (std::size_t i = 0; i < total; ++i) p.table[i] = decode_tuple(i, base_size, arity)[coordinate];
  return p;
}

Polymorphism minor(const Polymorphism& f, const MinorMap& pi) {
  if (pi.pi.size() != f.arity)
    throw std::invalid_argument("minor map has domain size " + std::to_string(pi.pi.size()) +
                                " but the function has arity " + std::to_string(f.arity));
  for (auto x : pi.pi)
    if (x >= pi.arity) throw std::invalid_argument("minor map value out of range");
  Polymorphism g{f.base_size, pi.arity, f.target_size, {}};
  auto total = checked_pow(f.base_size, pi.arity);
  require_under_cap(total, "minor");
  g.table.resize(total);
  std::vector<Vertex> args(f.arity);
  for (std::size_t i = 0; i < total; ++i) {
    auto y = decode_tuple(i, f.base_size, pi.arity);
    for (std::size_t j = 0; j < f.arity; ++j) args[j] = y[pi.pi[j]];
    g.table[i] = f(args);
  }
  return g;
}

std::vector<MinorMap> all_minor_maps(std::size_t m, std::size_t n) {
  std::vector<MinorMap> maps;
  auto total = checked_pow(n, m);
  for (std::size_t i = 0; i < total; ++i) {
    auto t = decode_tuple(i, n, m);
    maps.push_back({{t.begin(), t.end()}, n});
  }
  return maps;
}

std::vector<std::size_t> essential_coordinates(const Polymorphism& f) {
  std::vector<std::size_t> result;
  const std::size_t base = f.base_size;
  for (std::size_t c = 0; c < f.arity; ++c) {
    // Stride of coordinate c in the row-major encoding.
    std::size_t stride = checked_pow(base, f.arity - 1 - c);
    bool essential = false;
    for (std::size_t i = 0; i < f.table.size() && !essential; ++i) {
      if ((i / stride) % base != 0) continue;
      for (std::size_t a = 1; a < base; ++a)
        if (f.table[i + a * stride] != f.table[i]) {
          essential = true;
          break;
        }
    }
    if (essential) result.push_back(c);
  }
  return result;
}

std::optional<std::size_t> odd_girth(const Graph& g) {
  std::optional<std::size_t> best;
  const std::size_t n = g.size();
  std::vector<std::size_t> dist(2 * n);
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::deque<std::size_t> q{2 * s};
    dist[2 * s] = 0;
    while (!q.empty()) {
      auto x = q.front();
      q.pop_front();
      Vertex v = static_cast<Vertex>(x / 2);
      std::size_t parity = x % 2;
      for (auto w : g.out(v)) {
        auto y = 2 * w + (1 - parity);
        if (dist[y] == kInf) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
      }
    }
    if (dist[2 * s + 1] != kInf && (!best || dist[2 * s + 1] < *best)) best = dist[2 * s + 1];
  }
  return best;
}

}  // namespace adjhom
