#include "adjhom/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace adjhom {

namespace {

struct FaceHash {
  std::size_t operator()(const Face& f) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : f) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using FaceIndex = std::unordered_map<Face, std::size_t, FaceHash>;

Face sorted_face(std::vector<std::uint32_t> f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

}  // namespace

Face Z2Complex::image(const Face& f) const {
  Face out;
  out.reserve(f.size());
  for (auto v : f) out.push_back(involution[v]);
  std::sort(out.begin(), out.end());
  return out;
}

bool Z2Complex::contains(const Face& f) const {
  return std::any_of(maximal_faces.begin(), maximal_faces.end(), [&](const Face& m) {
    return std::includes(m.begin(), m.end(), f.begin(), f.end());
  });
}

std::vector<std::pair<Bitset, Bitset>> maximal_bicliques(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<Bitset> in(n), out(n);
  for (Vertex v = 0; v < n; ++v) {
    in[v] = g.in_set(v);
    out[v] = g.out_set(v);
  }
  // Closed source sets are the non-empty intersections of in-neighbourhoods.
  std::set<Bitset> closed;
  std::vector<Bitset> queue;
  for (Vertex v = 0; v < n; ++v)
    if (in[v].any() && closed.insert(in[v]).second) queue.push_back(in[v]);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    if (closed.size() > kFaceCap) throw CapExceeded("too many maximal bicliques");
    for (Vertex v = 0; v < n; ++v) {
      Bitset x = queue[i] & in[v];
      if (x.any() && closed.insert(x).second) queue.push_back(std::move(x));
    }
  }
  std::vector<std::pair<Bitset, Bitset>> result;
  for (const auto& u : closed) {
    Bitset common(n, true);
    u.for_each([&](std::size_t a) { common &= out[a]; });
    result.emplace_back(u, std::move(common));
  }
  std::sort(result.begin(), result.end());
  return result;
}

Z2Complex box_complex(const Graph& g) {
  if (!g.is_symmetric()) throw std::invalid_argument("box complex needs a symmetric graph");
  const std::size_t n = g.size();
  Z2Complex k;
  k.vertex_count = 2 * n;
  k.involution.resize(2 * n);
  for (std::uint32_t v = 0; v < n; ++v) {
    k.involution[v] = static_cast<std::uint32_t>(n + v);
    k.involution[n + v] = v;
  }
  for (const auto& [a, b] : maximal_bicliques(g)) {
    Face f;
    a.for_each([&](std::size_t v) { f.push_back(static_cast<std::uint32_t>(v)); });
    b.for_each([&](std::size_t v) { f.push_back(static_cast<std::uint32_t>(n + v)); });
    k.maximal_faces.push_back(std::move(f));
  }
  std::sort(k.maximal_faces.begin(), k.maximal_faces.end());
  return k;
}

Z2Complex hom_complex(const Graph& g) {
  if (!g.is_symmetric()) throw std::invalid_argument("hom complex needs a symmetric graph");
  Z2Complex k;
  k.vertex_count = g.arc_count();
  for (const auto& [u, v] : g.arcs())
    k.involution.push_back(static_cast<std::uint32_t>(g.arc_index(v, u)));
  for (const auto& [a, b] : maximal_bicliques(g)) {
    Face f;
    a.for_each([&](std::size_t u) {
      b.for_each([&](std::size_t v) {
        f.push_back(static_cast<std::uint32_t>(g.arc_index(static_cast<Vertex>(u), static_cast<Vertex>(v))));
      });
    });
    k.maximal_faces.push_back(sorted_face(std::move(f)));
  }
  std::sort(k.maximal_faces.begin(), k.maximal_faces.end());
  return k;
}

bool is_free(const Z2Complex& k) {
  for (const auto& f : k.maximal_faces) {
    auto img = k.image(f);
    std::vector<std::uint32_t> common;
    std::set_intersection(f.begin(), f.end(), img.begin(), img.end(), std::back_inserter(common));
    if (!common.empty()) return false;
  }
  return true;
}

// ------------------------------------------------------------------- Smith

namespace {

std::int64_t checked_sub_mul(std::int64_t a, std::int64_t q, std::int64_t b) {
  std::int64_t prod, out;
  if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out))
    throw std::overflow_error("Smith normal form: integer overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("Smith normal form: integer overflow");
  return out;
}

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

}  // namespace

std::vector<std::int64_t> smith_invariants(IntMatrix m) {
  std::vector<std::int64_t> inv;
  const std::size_t rows = m.rows, cols = m.cols;
  std::size_t r = 0;
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a != b)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(a, j), m.at(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a != b)
      for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, a), m.at(i, b));
  };
  while (r < rows && r < cols) {
    // Smallest non-zero entry of the remaining block becomes the pivot.
    auto place_pivot = [&]() {
      std::size_t bi = rows, bj = cols;
      std::int64_t best = 0;
      for (std::size_t i = r; i < rows; ++i)
        for (std::size_t j = r; j < cols; ++j) {
          auto v = abs64(m.at(i, j));
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            bi = i;
            bj = j;
            if (best == 1) break;
          }
        }
      if (best == 0) return false;
      swap_rows(r, bi);
      swap_cols(r, bj);
      return true;
    };
    if (!place_pivot()) break;
    while (true) {
      bool clean = true;
      const std::int64_t p = m.at(r, r);
      for (std::size_t i = r + 1; i < rows; ++i) {
        auto a = m.at(i, r);
        if (a == 0) continue;
        auto q = a / p;
        if (q != 0)
          for (std::size_t j = r; j < cols; ++j) m.at(i, j) = checked_sub_mul(m.at(i, j), q, m.at(r, j));
        if (m.at(i, r) != 0) clean = false;
      }
      for (std::size_t j = r + 1; j < cols; ++j) {
        auto a = m.at(r, j);
        if (a == 0) continue;
        auto q = a / p;
        if (q != 0)
          for (std::size_t i = r; i < rows; ++i) m.at(i, j) = checked_sub_mul(m.at(i, j), q, m.at(i, r));
        if (m.at(r, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot exists in row r or column r.
        std::size_t bi = r, bj = r;
        std::int64_t best = abs64(m.at(r, r));
        for (std::size_t i = r + 1; i < rows; ++i)
          if (m.at(i, r) != 0 && abs64(m.at(i, r)) < best) {
            best = abs64(m.at(i, r));
            bi = i;
            bj = r;
          }
        for (std::size_t j = r + 1; j < cols; ++j)
          if (m.at(r, j) != 0 && abs64(m.at(r, j)) < best) {
            best = abs64(m.at(r, j));
            bi = r;
            bj = j;
          }
        swap_rows(r, bi);
        swap_cols(r, bj);
        continue;
      }
      // Divisibility: every remaining entry must be a multiple of the pivot.
      std::size_t bad_row = rows;
      for (std::size_t i = r + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = r + 1; j < cols; ++j)
          if (m.at(i, j) % p != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      for (std::size_t j = r; j < cols; ++j) m.at(r, j) = checked_add(m.at(r, j), m.at(bad_row, j));
    }
    inv.push_back(abs64(m.at(r, r)));
    ++r;
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

// --------------------------------------------------------------- homology

std::vector<std::vector<Face>> faces_by_dimension(const Z2Complex& k, int max_dim) {
  std::vector<std::unordered_set<Face, FaceHash>> seen;
  std::size_t total = 0;
  for (const auto& m : k.maximal_faces) {
    if (m.size() > 24) throw CapExceeded("face with " + std::to_string(m.size()) + " vertices");
    const std::uint32_t limit = std::uint32_t{1} << m.size();
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
      int dim = std::popcount(mask) - 1;
      if (max_dim >= 0 && dim > max_dim) continue;
      Face f;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (mask >> i & 1u) f.push_back(m[i]);
      if (seen.size() <= static_cast<std::size_t>(dim)) seen.resize(dim + 1);
      if (seen[dim].insert(std::move(f)).second && ++total > kFaceCap)
        throw CapExceeded("complex exceeds " + std::to_string(kFaceCap) + " faces");
    }
  }
  std::vector<std::vector<Face>> out;
  for (auto& s : seen) {
    std::vector<Face> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

FaceIndex index_of(const std::vector<Face>& faces) {
  FaceIndex idx;
  for (std::size_t i = 0; i < faces.size(); ++i) idx.emplace(faces[i], i);
  return idx;
}

}  // namespace

ChainComplex simplicial_chains(const Z2Complex& k) {
  auto faces = faces_by_dimension(k);
  faces.resize(std::max<std::size_t>(faces.size(), 3));
  ChainComplex c;
  // Trailing empty dimensions are dropped from the counts.
  for (const auto& f : faces) c.cells.push_back(f.size());
  while (!c.cells.empty() && c.cells.back() == 0) c.cells.pop_back();
  auto idx0 = index_of(faces[0]);
  auto idx1 = index_of(faces[1]);
  c.d1 = IntMatrix(faces[0].size(), faces[1].size());
  for (std::size_t j = 0; j < faces[1].size(); ++j) {
    const auto& e = faces[1][j];
    c.d1.at(idx0.at({e[1]}), j) += 1;
    c.d1.at(idx0.at({e[0]}), j) -= 1;
  }
  c.d2 = IntMatrix(faces[1].size(), faces[2].size());
  for (std::size_t j = 0; j < faces[2].size(); ++j) {
    const auto& t = faces[2][j];
    c.d2.at(idx1.at({t[1], t[2]}), j) += 1;
    c.d2.at(idx1.at({t[0], t[2]}), j) -= 1;
    c.d2.at(idx1.at({t[0], t[1]}), j) += 1;
  }
  return c;
}

ChainComplex quotient(const Z2Complex& k) {
  if (!is_free(k)) throw std::invalid_argument("quotient needs a free involution");
  auto faces = faces_by_dimension(k);
  faces.resize(std::max<std::size_t>(faces.size(), 3));
  // Orbit representative: the lexicographically smaller of f and its image.
  std::vector<std::vector<Face>> reps(faces.size());
  for (std::size_t d = 0; d < faces.size(); ++d)
    for (const auto& f : faces[d])
      if (f < k.image(f)) reps[d].push_back(f);
  ChainComplex c;
  for (const auto& r : reps) c.cells.push_back(r.size());
  while (!c.cells.empty() && c.cells.back() == 0) c.cells.pop_back();

  // Coefficient of the sorted simplex tau in terms of its orbit cell.
  auto orbit_term = [&](const Face& tau, const FaceIndex& idx) -> std::pair<std::size_t, int> {
    auto img = k.image(tau);
    if (tau < img) return {idx.at(tau), 1};
    // tau = image(rep); compare the image of rep's sorted order with tau's order.
    std::vector<std::uint32_t> seq;
    for (auto v : img) seq.push_back(k.involution[v]);
    int sign = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
      for (std::size_t j = i + 1; j < seq.size(); ++j)
        if (seq[i] > seq[j]) sign = -sign;
    return {idx.at(img), sign};
  };

  auto idx0 = index_of(reps[0]);
  auto idx1 = index_of(reps[1]);
  c.d1 = IntMatrix(reps[0].size(), reps[1].size());
  for (std::size_t j = 0; j < reps[1].size(); ++j) {
    const auto& e = reps[1][j];
    auto [a, sa] = orbit_term({e[1]}, idx0);
    auto [b, sb] = orbit_term({e[0]}, idx0);
    c.d1.at(a, j) += sa;
    c.d1.at(b, j) -= sb;
  }
  c.d2 = IntMatrix(reps[1].size(), reps[2].size());
  for (std::size_t j = 0; j < reps[2].size(); ++j) {
    const auto& t = reps[2][j];
    const Face sides[3] = {{t[1], t[2]}, {t[0], t[2]}, {t[0], t[1]}};
    for (int i = 0; i < 3; ++i) {
      auto [row, s] = orbit_term(sides[i], idx1);
      c.d2.at(row, j) += (i % 2 == 0 ? s : -s);
    }
  }
  return c;
}

HomologySummary homology(const ChainComplex& c) {
  HomologySummary h;
  h.face_counts = c.cells;
  for (std::size_t d = 0; d < c.cells.size(); ++d)
    h.euler += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(c.cells[d]);
  auto inv1 = smith_invariants(c.d1);
  auto inv2 = smith_invariants(c.d2);
  const std::size_t c0 = c.cells.size() > 0 ? c.cells[0] : 0;
  const std::size_t c1 = c.cells.size() > 1 ? c.cells[1] : 0;
  h.betti0 = c0 - inv1.size();
  h.betti1 = c1 - inv1.size() - inv2.size();
  for (auto x : inv2)
    if (x > 1) h.torsion1.push_back(x);
  return h;
}

// ----------------------------------------------------------- induced maps

InducedMap induced_map(const Polymorphism& f, const Graph& g, const Graph& h) {
  if (!is_polymorphism(g, h, f)) throw std::invalid_argument("induced_map: not a polymorphism G^L -> H");
  InducedMap m{g.arc_count(), f.arity, {}};
  const auto total = checked_pow(g.arc_count(), f.arity);
  require_under_cap(total, "induced map");
  m.image.resize(total);
  std::vector<Vertex> us(f.arity), vs(f.arity);
  for (std::size_t i = 0; i < total; ++i) {
    auto t = decode_tuple(i, g.arc_count(), f.arity);
    for (std::size_t c = 0; c < f.arity; ++c) {
      us[c] = g.arcs()[t[c]].first;
      vs[c] = g.arcs()[t[c]].second;
    }
    auto idx = h.arc_index(f(us), f(vs));
    if (idx == Graph::npos) throw std::logic_error("induced_map: image is not an arc");
    m.image[i] = static_cast<std::uint32_t>(idx);
  }
  return m;
}

InducedMapCheck check_induced_map(const InducedMap& m, const Graph& g, const Graph& h) {
  InducedMapCheck out;
  const std::size_t L = m.arity, base = g.size();
  auto gl = power(g, L);
  // Arc of G^L -> index of its tuple of G-arcs.
  auto tuple_index = [&](Vertex a, Vertex b) {
    auto ua = decode_tuple(a, base, L), vb = decode_tuple(b, base, L);
    std::size_t idx = 0;
    for (std::size_t c = 0; c < L; ++c) idx = idx * m.source_arcs + g.arc_index(ua[c], vb[c]);
    return idx;
  };
  auto target = hom_complex(h);
  for (const auto& [a, b] : maximal_bicliques(gl)) {
    std::vector<std::uint32_t> img;
    a.for_each([&](std::size_t u) {
      b.for_each([&](std::size_t v) {
        img.push_back(m.image[tuple_index(static_cast<Vertex>(u), static_cast<Vertex>(v))]);
      });
    });
    auto face = sorted_face(std::move(img));
    for (auto x : face) {
      for (auto y : face)
        if (!h.has_arc(h.arcs()[x].first, h.arcs()[y].second)) {
          out.simplicial = false;
          break;
        }
      if (!out.simplicial) break;
    }
    if (!out.simplicial) break;
  }
  for (std::size_t i = 0; i < m.image.size() && out.equivariant; ++i) {
    auto t = decode_tuple(i, m.source_arcs, L);
    std::size_t rev = 0;
    for (auto arc : t) {
      const auto& [u, v] = g.arcs()[arc];
      rev = rev * m.source_arcs + g.arc_index(v, u);
    }
    const auto& [x, y] = h.arcs()[m.image[i]];
    out.equivariant = m.image[rev] == h.arc_index(y, x);
  }
  return out;
}

// ---------------------------------------------------------------- winding

namespace {

void require_circular_range(int p, int q) {
  if (p % 2 == 0) throw std::invalid_argument("winding needs odd p");
  if (q < 1 || p <= 2 * q || p >= 4 * q) throw std::invalid_argument("winding needs 2 < p/q < 4");
}

}  // namespace

std::int64_t winding(std::span<const Vertex> walk, int p, int q) {
  require_circular_range(p, q);
  if (walk.empty() || walk.front() != walk.back())
    throw std::invalid_argument("winding needs a closed walk");
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    if (walk[i] >= static_cast<Vertex>(p) || walk[i + 1] >= static_cast<Vertex>(p))
      throw std::invalid_argument("walk vertex out of range");
    int t = ((static_cast<int>(walk[i + 1]) - static_cast<int>(walk[i])) % p + p) % p;
    if (t < q || t > p - q)
      throw std::invalid_argument("walk step " + std::to_string(i) + " is not an arc of K_{" +
                                  std::to_string(p) + "/" + std::to_string(q) + "}");
    total += p - 2 * t;
  }
  if (total % p != 0) throw std::logic_error("winding: lift sum is not a multiple of p");
  return total / p;
}

std::vector<std::string> WindingProfile::violations() const {
  std::vector<std::string> v;
  if (d % 2 == 0) v.push_back("d = " + std::to_string(d) + " is even");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] % 2 != 0) v.push_back("a_" + std::to_string(i + 1) + " = " + std::to_string(a[i]) + " is odd");
    sum += a[i];
  }
  if (sum != 2 * d) v.push_back("sum of a = " + std::to_string(sum) + " differs from 2d = " + std::to_string(2 * d));
  return v;
}

WindingProfile winding_profile(const Polymorphism& f, int n, int p, int q) {
  require_circular_range(p, q);
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("winding_profile needs an odd cycle");
  if (!is_polymorphism(cycle(n), circular_clique(p, q), f))
    throw std::invalid_argument("winding_profile: not a polymorphism C_n^L -> K_{p/q}");
  const std::size_t L = f.arity;
  WindingProfile prof;
  std::vector<Vertex> x(L), walk;
  for (std::size_t l = 0; l < L; ++l) {
    walk.clear();
    for (int t = 0; t <= 2 * n; ++t) {
      for (std::size_t c = 0; c < L; ++c) x[c] = static_cast<Vertex>(c == l ? t % n : t % 2);
      walk.push_back(f(x));
    }
    prof.a.push_back(winding(walk, p, q));
  }
  walk.clear();
  for (int t = 0; t <= n; ++t) {
    std::fill(x.begin(), x.end(), static_cast<Vertex>(t % n));
    walk.push_back(f(x));
  }
  prof.d = winding(walk, p, q);
  return prof;
}

Polymorphism precompose_mirror(const Polymorphism& f, const std::vector<std::size_t>& coords) {
  const std::size_t n = f.base_size;
  Polymorphism g = f;
  std::vector<bool> flip(f.arity, false);
  for (auto c : coords) flip.at(c) = true;
  for (std::size_t i = 0; i < f.table.size(); ++i) {
    auto t = decode_tuple(i, n, f.arity);
    for (std::size_t c = 0; c < f.arity; ++c)
      if (flip[c]) t[c] = static_cast<Vertex>((n - t[c]) % n);
    g.table[i] = f(t);
  }
  return g;
}

Polymorphism cycle_to_circular(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("cycle_to_circular needs odd n >= 3");
  Polymorphism f{static_cast<std::size_t>(n), 1, static_cast<std::size_t>(n), {}};
  const int q = (n - 1) / 2;
  for (int i = 0; i < n; ++i) f.table.push_back(static_cast<Vertex>((i * q) % n));
  return f;
}

}  // namespace adjhom
