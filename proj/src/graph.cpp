#include "adjhom/graph.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

namespace adjhom {

namespace {

std::atomic<std::size_t> g_vertex_cap{kDefaultVertexCap};

void build_csr(std::size_t n, const std::vector<Arc>& arcs, bool by_source,
               std::vector<std::size_t>& off, std::vector<Vertex>& adj) {
  off.assign(n + 1, 0);
  for (const auto& [u, v] : arcs) ++off[(by_source ? u : v) + 1];
  std::partial_sum(off.begin(), off.end(), off.begin());
  adj.resize(arcs.size());
  std::vector<std::size_t> pos(off.begin(), off.end() - 1);
  for (const auto& [u, v] : arcs) {
    if (by_source)
      adj[pos[u]++] = v;
    else
      adj[pos[v]++] = u;
  }
  // Arcs are sorted by (u,v), so out-lists are sorted; in-lists are sorted
  // because sources are visited in increasing order.
}

}  // namespace

std::size_t vertex_cap() { return g_vertex_cap.load(); }
void set_vertex_cap(std::size_t cap) { g_vertex_cap.store(cap); }

void require_under_cap(std::size_t count, std::string_view what) {
  if (count > vertex_cap())
    throw CapExceeded(std::string(what) + ": " + std::to_string(count) +
                      " exceeds vertex cap " + std::to_string(vertex_cap()));
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  constexpr std::size_t kMax = static_cast<std::size_t>(-1);
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kMax / base) return kMax;
    r *= base;
  }
  return r;
}

Graph::Graph(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
  for (const auto& [u, v] : arcs_)
    if (u >= n_ || v >= n_)
      throw std::out_of_range("arc (" + std::to_string(u) + "," + std::to_string(v) +
                              ") out of range for " + std::to_string(n_) + " vertices");
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  build_csr(n_, arcs_, true, out_off_, out_);
  build_csr(n_, arcs_, false, in_off_, in_);
  symmetric_ = std::all_of(arcs_.begin(), arcs_.end(),
                           [&](const Arc& a) { return has_arc(a.second, a.first); });
}

bool Graph::has_arc(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  auto o = out(u);
  return std::binary_search(o.begin(), o.end(), v);
}

std::size_t Graph::arc_index(Vertex u, Vertex v) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), Arc{u, v});
  if (it == arcs_.end() || *it != Arc{u, v}) return npos;
  return static_cast<std::size_t>(it - arcs_.begin());
}

bool Graph::has_loop() const {
  return std::any_of(arcs_.begin(), arcs_.end(),
                     [](const Arc& a) { return a.first == a.second; });
}

std::size_t Graph::edge_count() const {
  std::size_t loops = 0;
  for (const auto& [u, v] : arcs_) loops += (u == v);
  return (arcs_.size() - loops) / 2 + loops;
}

Bitset Graph::out_set(Vertex u) const {
  Bitset b(n_);
  for (auto v : out(u)) b.set(v);
  return b;
}

Bitset Graph::in_set(Vertex v) const {
  Bitset b(n_);
  for (auto u : in(v)) b.set(u);
  return b;
}

Graph undirected(std::size_t n, const std::vector<Arc>& edges) {
  std::vector<Arc> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  return Graph(n, std::move(arcs));
}

// ---------------------------------------------------------------- families

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer '" + std::string(s) + "' in family spec '" +
                                std::string(whole) + "'");
  return value;
}

}  // namespace

GraphFamily GraphFamily::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("family spec '" + std::string(text) +
                                "' must look like kind:params");
  auto kind = text.substr(0, colon);
  auto args = text.substr(colon + 1);
  GraphFamily f;
  auto split2 = [&](char sep) {
    auto pos = args.find(sep);
    if (pos == std::string_view::npos)
      throw std::invalid_argument("family spec '" + std::string(text) + "' needs two parameters");
    f.a = parse_int(args.substr(0, pos), text);
    f.b = parse_int(args.substr(pos + 1), text);
  };
  if (kind == "clique" || kind == "complete") {
    f.kind = Kind::clique;
    f.a = parse_int(args, text);
  } else if (kind == "cycle") {
    f.kind = Kind::cycle;
    f.a = parse_int(args, text);
  } else if (kind == "path") {
    f.kind = Kind::path;
    f.a = parse_int(args, text);
  } else if (kind == "circular") {
    f.kind = Kind::circular_clique;
    split2('/');
  } else if (kind == "kneser") {
    f.kind = Kind::kneser;
    split2(',');
  } else {
    throw std::invalid_argument("unknown graph family '" + std::string(kind) + "'");
  }
  return f;
}

std::string GraphFamily::to_string() const {
  switch (kind) {
    case Kind::clique: return "clique:" + std::to_string(a);
    case Kind::cycle: return "cycle:" + std::to_string(a);
    case Kind::path: return "path:" + std::to_string(a);
    case Kind::circular_clique: return "circular:" + std::to_string(a) + "/" + std::to_string(b);
    case Kind::kneser: return "kneser:" + std::to_string(a) + "," + std::to_string(b);
  }
  return {};
}

Graph build(const GraphFamily& spec) {
  switch (spec.kind) {
    case GraphFamily::Kind::clique: return clique(spec.a);
    case GraphFamily::Kind::cycle: return cycle(spec.a);
    case GraphFamily::Kind::path: return path(spec.a);
    case GraphFamily::Kind::circular_clique: return circular_clique(spec.a, spec.b);
    case GraphFamily::Kind::kneser: return kneser(spec.a, spec.b);
  }
  throw std::invalid_argument("unknown family");
}

Graph clique(int n) {
  if (n < 1) throw std::invalid_argument("clique needs n >= 1");
  std::vector<Arc> arcs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) arcs.emplace_back(u, v);
  return Graph(static_cast<std::size_t>(n), std::move(arcs));
}

Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Arc> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return undirected(static_cast<std::size_t>(n), edges);
}

Graph path(int n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  std::vector<Arc> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return undirected(static_cast<std::size_t>(n), edges);
}

Graph circular_clique(int p, int q) {
  if (p < 1 || q < 1 || p <= 2 * q)
    throw std::invalid_argument("circular clique K_{" + std::to_string(p) + "/" +
                                std::to_string(q) + "} needs p/q > 2");
  std::vector<Arc> arcs;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      int d = ((j - i) % p + p) % p;
      if (d >= q && d <= p - q) arcs.emplace_back(i, j);
    }
  return Graph(static_cast<std::size_t>(p), std::move(arcs));
}

Graph kneser(int n, int k) {
  if (k < 1 || n < 2 * k || n > 24)
    throw std::invalid_argument("Kneser graph KG(" + std::to_string(n) + "," + std::to_string(k) +
                                ") needs 1 <= k, n >= 2k, n <= 24");
  std::vector<std::uint32_t> sets;
  for (std::uint32_t m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == k) sets.push_back(m);
  require_under_cap(sets.size(), "kneser");
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j)
      if ((sets[i] & sets[j]) == 0) arcs.emplace_back(i, j);
  return Graph(sets.size(), std::move(arcs));
}

// ---------------------------------------------------------- constructions

Graph tensor_product(const Graph& g, const Graph& h) {
  const std::size_t nh = h.size();
  const std::size_t n = g.size() * nh;
  if (nh != 0 && n / nh != g.size()) throw CapExceeded("tensor product size overflow");
  require_under_cap(n, "tensor product");
  std::vector<Arc> arcs;
  arcs.reserve(g.arc_count() * h.arc_count());
  for (const auto& [g1, g2] : g.arcs())
    for (const auto& [h1, h2] : h.arcs())
      arcs.emplace_back(static_cast<Vertex>(g1 * nh + h1), static_cast<Vertex>(g2 * nh + h2));
  return Graph(n, std::move(arcs));
}

Graph power(const Graph& g, std::size_t L) {
  if (L < 1) throw std::invalid_argument("power needs L >= 1");
  require_under_cap(checked_pow(g.size(), L), "power");
  Graph result = g;
  for (std::size_t i = 1; i < L; ++i) result = tensor_product(result, g);
  return result;
}

std::vector<Vertex> decode_tuple(std::size_t index, std::size_t base, std::size_t arity) {
  std::vector<Vertex> t(arity);
  for (std::size_t i = arity; i-- > 0;) {
    t[i] = static_cast<Vertex>(index % base);
    index /= base;
  }
  return t;
}

std::size_t encode_tuple(std::span<const Vertex> tuple, std::size_t base) {
  std::size_t index = 0;
  for (auto x : tuple) index = index * base + x;
  return index;
}

Graph exponential(const Graph& h, const Graph& f) {
  const std::size_t nf = f.size(), nh = h.size();
  const std::size_t n = checked_pow(nh, nf);
  require_under_cap(n, "exponential graph");
  std::vector<std::vector<Vertex>> maps(n);
  for (std::size_t i = 0; i < n; ++i) maps[i] = decode_tuple(i, nh, nf);
  std::vector<Arc> arcs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      bool ok = true;
      for (const auto& [u, v] : f.arcs())
        if (!h.has_arc(maps[a][u], maps[b][v])) {
          ok = false;
          break;
        }
      if (ok) arcs.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
  return Graph(n, std::move(arcs));
}

Graph add_universal_vertex(const Graph& g) {
  const auto n = static_cast<Vertex>(g.size());
  std::vector<Arc> arcs = g.arcs();
  for (Vertex v = 0; v < n; ++v) {
    arcs.emplace_back(v, n);
    arcs.emplace_back(n, v);
  }
  return Graph(g.size() + 1, std::move(arcs));
}

// ------------------------------------------------------------------ text I/O

Graph parse_graph(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false, symmetric = false;
  std::size_t n = 0, m = 0, seen = 0;
  std::vector<Arc> arcs;
  std::set<Arc> seen_arcs;

  auto next_line = [&](std::string_view& out) {
    if (pos >= text.size()) return false;
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    out = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
    return true;
  };

  std::string_view line;
  while (next_line(line)) {
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    std::istringstream in{std::string(line)};
    if (!have_header) {
      std::string kind;
      long long nn = -1, mm = -1;
      std::string extra;
      if (!(in >> kind >> nn >> mm) || (in >> extra) || nn < 0 || mm < 0)
        throw ParseError(line_no, "expected header 'graph n m' or 'digraph n m'");
      if (kind == "graph")
        symmetric = true;
      else if (kind == "digraph")
        symmetric = false;
      else
        throw ParseError(line_no, "unknown header kind '" + kind + "'");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      have_header = true;
      continue;
    }
    long long u = -1, v = -1;
    std::string extra;
    if (!(in >> u >> v) || (in >> extra))
      throw ParseError(line_no, "expected arc line 'u v'");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      throw ParseError(line_no, "endpoint out of range [0," + std::to_string(n) + ")");
    if (++seen > m) throw ParseError(line_no, "more than " + std::to_string(m) + " arc lines");
    auto a = Arc{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    auto check_dup = [&](Arc x) {
      if (!seen_arcs.insert(x).second)
        throw ParseError(line_no, "duplicate arc " + std::to_string(x.first) + " " +
                                      std::to_string(x.second));
    };
    check_dup(a);
    arcs.push_back(a);
    if (symmetric && a.first != a.second) {
      check_dup({a.second, a.first});
      arcs.emplace_back(a.second, a.first);
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (seen != m)
    throw ParseError(line_no, "expected " + std::to_string(m) + " arc lines, found " +
                                  std::to_string(seen));
  return Graph(n, std::move(arcs));
}

std::string serialize(const Graph& g, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  if (g.is_symmetric()) {
    out += "graph " + std::to_string(g.size()) + " " + std::to_string(g.edge_count()) + "\n";
    for (const auto& [u, v] : g.arcs())
      if (u <= v) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  } else {
    out += "digraph " + std::to_string(g.size()) + " " + std::to_string(g.arc_count()) + "\n";
    for (const auto& [u, v] : g.arcs()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  return out;
}

std::string graph_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize(g)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// -------------------------------------------------------------- isomorphism

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  std::vector<Arc> arcs;
  arcs.reserve(g.arc_count());
  for (const auto& [u, v] : g.arcs()) arcs.emplace_back(perm[u], perm[v]);
  return Graph(g.size(), std::move(arcs));
}

namespace {

struct IsoSearch {
  const Graph& a;
  const Graph& b;
  std::vector<std::tuple<std::size_t, std::size_t, bool>> sig_a, sig_b;
  std::vector<Vertex> map, order;
  std::vector<bool> used;

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    Vertex u = order[depth];
    for (Vertex x = 0; x < b.size(); ++x) {
      if (used[x] || sig_a[u] != sig_b[x]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        Vertex w = order[d];
        ok = a.has_arc(u, w) == b.has_arc(x, map[w]) && a.has_arc(w, u) == b.has_arc(map[w], x);
      }
      if (!ok) continue;
      map[u] = x;
      used[x] = true;
      if (extend(depth + 1)) return true;
      used[x] = false;
    }
    return false;
  }
};

}  // namespace

bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size() || a.arc_count() != b.arc_count()) return false;
  IsoSearch s{a, b, {}, {}, {}, {}, {}};
  auto sig = [](const Graph& g, Vertex v) {
    return std::tuple{g.out_degree(v), g.in_degree(v), g.has_loop(v)};
  };
  for (Vertex v = 0; v < a.size(); ++v) {
    s.sig_a.push_back(sig(a, v));
    s.sig_b.push_back(sig(b, v));
  }
  auto sa = s.sig_a, sb = s.sig_b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  // Visit vertices so that each one (after the first of its component) is
  // adjacent to an already-placed vertex, which prunes early.
  std::vector<bool> placed(a.size(), false);
  for (Vertex root = 0; root < a.size(); ++root) {
    if (placed[root]) continue;
    std::vector<Vertex> queue{root};
    placed[root] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Vertex u = queue[i];
      s.order.push_back(u);
      auto visit = [&](Vertex w) {
        if (!placed[w]) {
          placed[w] = true;
          queue.push_back(w);
        }
      };
      for (auto w : a.out(u)) visit(w);
      for (auto w : a.in(u)) visit(w);
    }
  }
  s.map.assign(a.size(), 0);
  s.used.assign(a.size(), false);
  return s.extend(0);
}

}  // namespace adjhom
