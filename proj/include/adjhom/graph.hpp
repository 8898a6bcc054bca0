#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adjhom/bitset.hpp"

namespace adjhom {

using Vertex = std::uint32_t;
using Arc = std::pair<Vertex, Vertex>;

/// Raised when a construction would exceed the configured vertex cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Process-wide vertex cap guarding exponential constructions.
std::size_t vertex_cap();
void set_vertex_cap(std::size_t cap);
inline constexpr std::size_t kDefaultVertexCap = 2'000'000;

/// Throws CapExceeded unless count <= vertex_cap(); `what` names the construction.
void require_under_cap(std::size_t count, std::string_view what);

/// Saturating product for size estimates.
std::size_t checked_pow(std::size_t base, std::size_t exp);

/// A finite digraph on vertices 0..n-1. Loops are allowed; duplicate arcs
/// are merged on construction. Undirected graphs are symmetric digraphs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : Graph(n, {}) {}
  Graph(std::size_t n, std::vector<Arc> arcs);

  std::size_t size() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::span<const Vertex> out(Vertex u) const {
    return {out_.data() + out_off_[u], out_.data() + out_off_[u + 1]};
  }
  std::span<const Vertex> in(Vertex v) const {
    return {in_.data() + in_off_[v], in_.data() + in_off_[v + 1]};
  }
  std::size_t out_degree(Vertex u) const { return out_off_[u + 1] - out_off_[u]; }
  std::size_t in_degree(Vertex v) const { return in_off_[v + 1] - in_off_[v]; }

  bool has_arc(Vertex u, Vertex v) const;
  /// Position of (u,v) in arcs(), or npos.
  std::size_t arc_index(Vertex u, Vertex v) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool is_symmetric() const { return symmetric_; }
  bool has_loop() const;
  bool has_loop(Vertex v) const { return has_arc(v, v); }

  /// Number of undirected edges; only meaningful for symmetric graphs.
  std::size_t edge_count() const;

  Bitset out_set(Vertex u) const;
  Bitset in_set(Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_off_{0}, in_off_{0};
  std::vector<Vertex> out_, in_;
  bool symmetric_ = true;
};

/// Symmetric graph from undirected edge list.
Graph undirected(std::size_t n, const std::vector<Arc>& edges);

struct GraphFamily {
  enum class Kind { clique, cycle, circular_clique, kneser, path };
  Kind kind = Kind::clique;
  int a = 1;  // n, or p for circular cliques
  int b = 0;  // q for circular cliques, k for Kneser graphs

  /// Parses `clique:4`, `cycle:5`, `circular:7/2`, `kneser:5,2`, `path:3`.
  static GraphFamily parse(std::string_view text);
  std::string to_string() const;
};

Graph build(const GraphFamily& spec);
Graph clique(int n);
Graph cycle(int n);
Graph path(int n);
Graph circular_clique(int p, int q);
Graph kneser(int n, int k);

/// Tensor (categorical) product; (g,h) is encoded as g*|V(H)|+h.
Graph tensor_product(const Graph& g, const Graph& h);
/// L-fold tensor power with row-major tuple encoding.
Graph power(const Graph& g, std::size_t L);
/// Exponential graph H^F: vertices are maps V(F)->V(H) encoded row-major
/// (image of F-vertex 0 is the most significant digit).
Graph exponential(const Graph& h, const Graph& f);
Graph add_universal_vertex(const Graph& g);

/// Row-major tuple encoding helpers for powers.
std::vector<Vertex> decode_tuple(std::size_t index, std::size_t base, std::size_t arity);
std::size_t encode_tuple(std::span<const Vertex> tuple, std::size_t base);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Graph parse_graph(std::string_view text);
/// Canonical text form; symmetric graphs are written as `graph`, with each
/// edge listed once as `u v`, u <= v. Comment lines are emitted first.
std::string serialize(const Graph& g, const std::vector<std::string>& comments = {});

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string graph_hash(const Graph& g);

/// Backtracking isomorphism test with degree pruning; desk-scale only.
bool are_isomorphic(const Graph& a, const Graph& b);
/// Relabels vertices: vertex v of g becomes perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

}  // namespace adjhom
