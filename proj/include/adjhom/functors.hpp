#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adjhom/graph.hpp"

namespace adjhom {

/// Arc digraph: one vertex per arc of D (indexed as in D.arcs()), and an
/// arc ((u,v),(v,w)) for every composable pair, w = u allowed.
Graph arc_digraph(const Graph& d);

/// Thin left adjoint of the arc digraph: an arc s_v -> t_v per vertex v,
/// with t_u glued to s_v for every arc (u,v) (equivalence closure). Classes
/// are numbered in order of their smallest member, s_v = 2v, t_v = 2v+1.
Graph delta_left(const Graph& d);

/// Thin right adjoint of the arc digraph.
struct DeltaRVertex {
  std::uint64_t sources;  // S as a bitmask over V(D)
  std::uint64_t targets;  // T
};

/// Vertices are all (S,T) with S x T a subset of the arcs, ordered by
/// (S mask, T mask); arc (S,T) -> (S',T') iff T meets S'.
Graph delta_right(const Graph& d);
std::vector<DeltaRVertex> delta_right_vertices(const Graph& d);

Graph symmetric_closure(const Graph& d);
Graph symmetric_part(const Graph& d);

/// Replaces every undirected edge (loops included) by a path with k edges.
/// Fresh vertices follow the originals, edge by edge in (u <= v) order.
Graph subdivide(const Graph& g, std::size_t k);

/// Arc (u,v) iff some walk of length exactly k leads from u to v.
Graph walk_power(const Graph& g, std::size_t k);

/// Vertex of the right adjoint of walk_power: (A_0, .., A_l), |A_0| = 1.
struct OmegaVertex {
  Vertex root;                      // the element of A_0
  std::vector<std::uint64_t> sets;  // A_1 .. A_l as bitmasks
};

/// Tuples ordered by (root, A_1 mask, .., A_l mask), l = (k-1)/2.
std::vector<OmegaVertex> omega_vertices(const Graph& g, std::size_t k);
Graph omega(const Graph& g, std::size_t k);
/// The homomorphism omega(G,k) -> G sending a tuple to its root.
std::vector<Vertex> omega_projection(const Graph& g, std::size_t k);

/// Central binomial coefficient C(n, floor(n/2)); throws on overflow.
std::uint64_t central_binomial(std::size_t n);

/// A named construction with its parameter, as accepted by `apply`.
struct FunctorSpec {
  enum class Kind { delta, delta_l, delta_r, sym, sub, lambda, gamma, omega, universal };
  Kind kind = Kind::delta;
  std::size_t k = 1;

  /// Parses `delta`, `delta_l`, `delta_r`, `sym`, `sub`, `lambda:k`,
  /// `gamma:k`, `omega:k`, `universal`.
  static FunctorSpec parse(std::string_view text);
  std::string to_string() const;
};

Graph apply_functor(const FunctorSpec& f, const Graph& g);

}  // namespace adjhom
