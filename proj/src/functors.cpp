#include "adjhom/functors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace adjhom {

namespace {

void require_mask_width(const Graph& g, std::size_t limit, std::string_view what) {
  if (g.size() > limit)
    throw CapExceeded(std::string(what) + " supports at most " + std::to_string(limit) +
                      " input vertices");
}

std::uint64_t out_mask(const Graph& g, Vertex v) {
  std::uint64_t m = 0;
  for (auto w : g.out(v)) m |= std::uint64_t{1} << w;
  return m;
}

void require_odd(std::size_t k, std::size_t min, std::string_view what) {
  if (k % 2 == 0 || k < min)
    throw std::invalid_argument(std::string(what) + " needs odd k >= " + std::to_string(min) +
                                ", got " + std::to_string(k));
}

}  // namespace

Graph arc_digraph(const Graph& d) {
  const auto& arcs = d.arcs();
  std::vector<Arc> out;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    Vertex v = arcs[i].second;
    // Arcs leaving v form a contiguous run of the sorted arc list.
    auto first = d.arc_index(v, d.out(v).empty() ? 0 : d.out(v).front());
    for (std::size_t j = 0; j < d.out_degree(v); ++j)
      out.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(first + j));
  }
  return Graph(arcs.size(), std::move(out));
}

Graph delta_left(const Graph& d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : d.arcs()) {
    auto a = find(2 * u + 1), b = find(2 * v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // Roots are the smallest members, so numbering roots in index order
  // numbers classes by their smallest member.
  std::vector<std::size_t> id(2 * n, 0);
  std::size_t classes = 0;
  for (std::size_t x = 0; x < 2 * n; ++x)
    if (find(x) == x) id[x] = classes++;
  std::vector<Arc> arcs;
  for (Vertex v = 0; v < n; ++v)
    arcs.emplace_back(static_cast<Vertex>(id[find(2 * v)]), static_cast<Vertex>(id[find(2 * v + 1)]));
  return Graph(classes, std::move(arcs));
}

std::vector<DeltaRVertex> delta_right_vertices(const Graph& d) {
  require_mask_width(d, 20, "delta_right");
  const std::size_t n = d.size();
  std::vector<std::uint64_t> out(n);
  for (Vertex v = 0; v < n; ++v) out[v] = out_mask(d, v);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::size_t total = 0;
  std::vector<std::uint64_t> common(std::size_t{1} << n);
  for (std::uint64_t s = 0; s <= all; ++s) {
    std::uint64_t c = all;
    for (auto t = s; t; t &= t - 1) c &= out[std::countr_zero(t)];
    common[s] = c;
    total += std::size_t{1} << std::popcount(c);
  }
  require_under_cap(total, "delta_right");
  std::vector<DeltaRVertex> verts;
  verts.reserve(total);
  for (std::uint64_t s = 0; s <= all; ++s) {
    // Submasks of common[s] in increasing order.
    std::uint64_t c = common[s], t = 0;
    while (true) {
      verts.push_back({s, t});
      if (t == c) break;
      t = (t - c) & c;
    }
  }
  return verts;
}

Graph delta_right(const Graph& d) {
  auto verts = delta_right_vertices(d);
  std::vector<Arc> arcs;
  for (std::size_t a = 0; a < verts.size(); ++a) {
    if (verts[a].targets == 0) continue;
    for (std::size_t b = 0; b < verts.size(); ++b)
      if (verts[a].targets & verts[b].sources) arcs.emplace_back(a, b);
  }
  return Graph(verts.size(), std::move(arcs));
}

Graph symmetric_closure(const Graph& d) {
  std::vector<Arc> arcs = d.arcs();
  for (const auto& [u, v] : d.arcs()) arcs.emplace_back(v, u);
  return Graph(d.size(), std::move(arcs));
}

Graph symmetric_part(const Graph& d) {
  std::vector<Arc> arcs;
  for (const auto& [u, v] : d.arcs())
    if (d.has_arc(v, u)) arcs.emplace_back(u, v);
  return Graph(d.size(), std::move(arcs));
}

Graph subdivide(const Graph& g, std::size_t k) {
  require_odd(k, 1, "subdivide");
  if (!g.is_symmetric()) throw std::invalid_argument("subdivide needs a symmetric graph");
  if (k == 1) return g;
  std::size_t n = g.size() + (k - 1) * g.edge_count();
  require_under_cap(n, "subdivide");
  std::vector<Arc> edges;
  auto next = static_cast<Vertex>(g.size());
  for (const auto& [u, v] : g.arcs()) {
    if (u > v) continue;
    Vertex prev = u;
    for (std::size_t i = 1; i < k; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, v);
  }
  return undirected(n, edges);
}

Graph walk_power(const Graph& g, std::size_t k) {
  require_odd(k, 1, "walk_power");
  const std::size_t n = g.size();
  std::vector<Bitset> step(n), reach(n);
  for (Vertex v = 0; v < n; ++v) reach[v] = step[v] = g.out_set(v);
  for (std::size_t len = 1; len < k; ++len) {
    std::vector<Bitset> next(n, Bitset(n));
    for (Vertex u = 0; u < n; ++u) reach[u].for_each([&](std::size_t w) { next[u] |= step[w]; });
    reach = std::move(next);
  }
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    reach[u].for_each([&](std::size_t v) { arcs.emplace_back(u, static_cast<Vertex>(v)); });
  return Graph(n, std::move(arcs));
}

std::vector<OmegaVertex> omega_vertices(const Graph& g, std::size_t k) {
  require_odd(k, 3, "omega");
  require_mask_width(g, 20, "omega");
  const std::size_t n = g.size(), l = (k - 1) / 2;
  if (n == 0) return {};
  if (l * n + std::bit_width(n) >= 63) throw CapExceeded("omega: vertex count overflow");
  require_under_cap(n << (l * n), "omega");
  const std::uint64_t per_root = std::uint64_t{1} << (l * n);
  const std::uint64_t set_mask = (std::uint64_t{1} << n) - 1;
  std::vector<OmegaVertex> verts;
  verts.reserve(n * per_root);
  for (Vertex r = 0; r < n; ++r)
    for (std::uint64_t code = 0; code < per_root; ++code) {
      OmegaVertex x{r, std::vector<std::uint64_t>(l)};
      // A_1 is the most significant block so that the order is lexicographic.
      for (std::size_t i = 0; i < l; ++i) x.sets[i] = (code >> ((l - 1 - i) * n)) & set_mask;
      verts.push_back(std::move(x));
    }
  return verts;
}

Graph omega(const Graph& g, std::size_t k) {
  auto verts = omega_vertices(g, k);
  const std::size_t n = g.size(), l = (k - 1) / 2;
  std::vector<std::uint64_t> out(n);
  for (Vertex v = 0; v < n; ++v) out[v] = out_mask(g, v);
  // Level i set of a tuple, with level 0 the singleton root.
  auto level = [&](const OmegaVertex& x, std::size_t i) {
    return i == 0 ? std::uint64_t{1} << x.root : x.sets[i - 1];
  };
  std::vector<std::uint64_t> fully(verts.size());
  for (std::size_t a = 0; a < verts.size(); ++a) {
    std::uint64_t c = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (auto s = level(verts[a], l); s; s &= s - 1) c &= out[std::countr_zero(s)];
    fully[a] = c;
  }
  std::vector<Arc> arcs;
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = 0; b < verts.size(); ++b) {
      bool ok = (level(verts[b], l) & ~fully[a]) == 0;
      for (std::size_t i = 0; ok && i < l; ++i)
        ok = (level(verts[a], i) & ~level(verts[b], i + 1)) == 0 &&
             (level(verts[b], i) & ~level(verts[a], i + 1)) == 0;
      if (ok) arcs.emplace_back(a, b);
    }
  return Graph(verts.size(), std::move(arcs));
}

std::vector<Vertex> omega_projection(const Graph& g, std::size_t k) {
  auto verts = omega_vertices(g, k);
  std::vector<Vertex> image;
  image.reserve(verts.size());
  for (const auto& x : verts) image.push_back(x.root);
  return image;
}

std::uint64_t central_binomial(std::size_t n) {
  const std::size_t k = n / 2;
  unsigned __int128 c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // exact: c*(n-k+i) = C(n-k+i, i) * i
    if (c > static_cast<unsigned __int128>(~std::uint64_t{0}))
      throw std::overflow_error("central binomial b(" + std::to_string(n) + ") overflows 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

FunctorSpec FunctorSpec::parse(std::string_view text) {
  FunctorSpec f;
  auto colon = text.find(':');
  auto name = text.substr(0, colon);
  bool has_k = colon != std::string_view::npos;
  if (has_k) {
    auto arg = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), f.k);
    if (ec != std::errc{} || ptr != arg.data() + arg.size())
      throw std::invalid_argument("bad functor parameter in '" + std::string(text) + "'");
  }
  using K = Kind;
  struct Entry {
    std::string_view name;
    K kind;
    bool param;
  };
  static constexpr Entry table[] = {
      {"delta", K::delta, false},   {"delta_l", K::delta_l, false}, {"delta_r", K::delta_r, false},
      {"sym", K::sym, false},       {"sub", K::sub, false},         {"lambda", K::lambda, true},
      {"gamma", K::gamma, true},    {"omega", K::omega, true},      {"universal", K::universal, false},
  };
  for (const auto& e : table)
    if (e.name == name) {
      if (e.param != has_k)
        throw std::invalid_argument("functor '" + std::string(name) +
                                    (e.param ? "' needs a parameter :k" : "' takes no parameter"));
      f.kind = e.kind;
      return f;
    }
  throw std::invalid_argument("unknown functor '" + std::string(text) + "'");
}

std::string FunctorSpec::to_string() const {
  switch (kind) {
    case Kind::delta: return "delta";
    case Kind::delta_l: return "delta_l";
    case Kind::delta_r: return "delta_r";
    case Kind::sym: return "sym";
    case Kind::sub: return "sub";
    case Kind::lambda: return "lambda:" + std::to_string(k);
    case Kind::gamma: return "gamma:" + std::to_string(k);
    case Kind::omega: return "omega:" + std::to_string(k);
    case Kind::universal: return "universal";
  }
  return {};
}

Graph apply_functor(const FunctorSpec& f, const Graph& g) {
  switch (f.kind) {
    case FunctorSpec::Kind::delta: return arc_digraph(g);
    case FunctorSpec::Kind::delta_l: return delta_left(g);
    case FunctorSpec::Kind::delta_r: return delta_right(g);
    case FunctorSpec::Kind::sym: return symmetric_closure(g);
    case FunctorSpec::Kind::sub: return symmetric_part(g);
    case FunctorSpec::Kind::lambda: return subdivide(g, f.k);
    case FunctorSpec::Kind::gamma: return walk_power(g, f.k);
    case FunctorSpec::Kind::omega: return omega(g, f.k);
    case FunctorSpec::Kind::universal: return add_universal_vertex(g);
  }
  throw std::invalid_argument("unknown functor");
}

}  // namespace adjhom
