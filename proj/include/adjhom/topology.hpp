#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adjhom/bitset.hpp"
#include "adjhom/graph.hpp"
#include "adjhom/hom.hpp"

namespace adjhom {

/// Sorted vertex set of a simplex.
using Face = std::vector<std::uint32_t>;

/// Simplicial complex given by maximal faces, with a vertex involution.
/// Vertices that lie in no face are not simplices of the complex.
struct Z2Complex {
  std::size_t vertex_count = 0;
  std::vector<Face> maximal_faces;
  std::vector<std::uint32_t> involution;

  Face image(const Face& f) const;
  bool contains(const Face& f) const;
};

/// Maximal pairs (U,V) with U x V inside the arc set and both sides non-empty,
/// sorted by (U,V).
std::vector<std::pair<Bitset, Bitset>> maximal_bicliques(const Graph& g);

/// Box complex: vertices (v,0) = v and (v,1) = n+v; the involution swaps sides.
Z2Complex box_complex(const Graph& g);
/// Hom(K2,G): vertices are arcs of G (in G.arcs() order); (u,v) <-> (v,u).
Z2Complex hom_complex(const Graph& g);

bool is_free(const Z2Complex& k);

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::int64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Non-zero invariant factors of the Smith normal form, ascending. Throws
/// std::overflow_error if an entry leaves the 64-bit range.
std::vector<std::int64_t> smith_invariants(IntMatrix m);

/// Chain complex truncated for H_0/H_1: cell counts in every dimension,
/// plus the boundary maps d1: C1 -> C0 and d2: C2 -> C1.
struct ChainComplex {
  std::vector<std::size_t> cells;
  IntMatrix d1, d2;
};

struct HomologySummary {
  std::int64_t euler = 0;
  std::size_t betti0 = 0;
  std::size_t betti1 = 0;
  std::vector<std::int64_t> torsion1;
  std::vector<std::size_t> face_counts;
};

inline constexpr std::size_t kFaceCap = 1'000'000;

/// All faces up to dimension max_dim (every dimension if max_dim < 0), per dimension.
std::vector<std::vector<Face>> faces_by_dimension(const Z2Complex& k, int max_dim = -1);

ChainComplex simplicial_chains(const Z2Complex& k);
/// Orbit-cell chain complex of the quotient by a free involution.
ChainComplex quotient(const Z2Complex& k);

HomologySummary homology(const ChainComplex& c);
inline HomologySummary homology(const Z2Complex& k) { return homology(simplicial_chains(k)); }

/// The simplicial map Hom(K2,G)^L -> Hom(K2,H) induced by f in Pol(G,H):
/// an L-tuple of arcs of G (row-major over arc indices) goes to
/// (f(u_1..u_L), f(v_1..v_L)) as an arc index of H.
struct InducedMap {
  std::size_t source_arcs = 0;
  std::size_t arity = 0;
  std::vector<std::uint32_t> image;
};

InducedMap induced_map(const Polymorphism& f, const Graph& g, const Graph& h);

struct InducedMapCheck {
  bool simplicial = true;
  bool equivariant = true;
};

/// Checks faces-to-faces (via the maximal faces of Hom(K2, G^L)) and
/// commutation with the involutions.
InducedMapCheck check_induced_map(const InducedMap& m, const Graph& g, const Graph& h);

/// Winding number of a closed walk in K_{p/q}, p odd, 2 < p/q < 4. A step of
/// difference t (mod p) lifts to p - 2t, so a +q step counts positively;
/// the lift sum is a multiple of p and the result is sum / p.
std::int64_t winding(std::span<const Vertex> walk, int p, int q);

struct WindingProfile {
  std::vector<std::int64_t> a;
  std::int64_t d = 0;

  /// Violated profile identities (d odd, each a_l even, sum a = 2d).
  std::vector<std::string> violations() const;
  friend bool operator==(const WindingProfile&, const WindingProfile&) = default;
};

/// Profile of f in Pol(C_n, K_{p/q}) over the standard cycle labelling.
/// a_l winds the image of the walk from (0..0) in which coordinate l makes
/// two +1 laps while the others alternate +1,-1; d winds the image of the
/// diagonal lap.
WindingProfile winding_profile(const Polymorphism& f, int n, int p, int q);

/// f with the reflection v -> -v (mod n) applied to the coordinates in `coords`.
Polymorphism precompose_mirror(const Polymorphism& f, const std::vector<std::size_t>& coords);

/// The isomorphism C_n -> K_{n/((n-1)/2)}, i -> i(n-1)/2 mod n, for odd n.
Polymorphism cycle_to_circular(int n);

}  // namespace adjhom
