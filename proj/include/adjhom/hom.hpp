#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "adjhom/graph.hpp"

namespace adjhom {

/// Candidate homomorphism witness: vertex v of the source goes to image[v].
struct VertexMap {
  std::size_t target_size = 0;
  std::vector<Vertex> image;

  friend bool operator==(const VertexMap&, const VertexMap&) = default;
};

/// First source arc whose image is not a target arc, if any. Also reports
/// size mismatches and out-of-range images as a violation at arc (v,v).
std::optional<Arc> first_violation(const Graph& g, const Graph& h, const VertexMap& m);
inline bool is_homomorphism(const Graph& g, const Graph& h, const VertexMap& m) {
  return !first_violation(g, h, m).has_value();
}

struct Coloring {
  std::size_t colors = 0;
  std::vector<std::uint32_t> assignment;
};

/// Proper iff every colour is < colors and no arc (including loops) is monochromatic.
std::optional<Arc> first_conflict(const Graph& g, const Coloring& c);
inline bool is_proper(const Graph& g, const Coloring& c) { return !first_conflict(g, c); }

VertexMap to_vertex_map(const Coloring& c);
Coloring to_coloring(const VertexMap& m);

enum class Outcome { found, none, unknown };

/// Default search-node budget: ADJHOM_BUDGET if set, else 10^8.
std::uint64_t default_node_budget();

struct SearchOptions {
  std::uint64_t node_budget = default_node_budget();
  bool fold_dominated = true;
};

/// u was removed because its in/out neighbourhoods are contained in those of `into`.
struct Fold {
  Vertex folded;
  Vertex into;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t folded = 0;
  std::size_t components = 0;
};

struct HomResult {
  Outcome outcome = Outcome::unknown;
  std::optional<VertexMap> map;
  SearchStats stats;
  std::vector<Fold> folds;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dominated-vertex folding of a source graph, in application order.
std::vector<Fold> dominated_folds(const Graph& g);

/// Exact homomorphism search: arc-consistency propagation, smallest-domain
/// branching, per-component solving. Witnesses are re-validated.
HomResult find_homomorphism(const Graph& g, const Graph& h, const SearchOptions& opts = {});

/// Decision wrapper; throws BudgetExhausted when the search is inconclusive.
bool maps_to(const Graph& g, const Graph& h, const SearchOptions& opts = {});

struct ChromaticNumber {
  enum class Kind { exact, has_loop, bounds };
  Kind kind = Kind::exact;
  std::size_t value = 0;  // exact value, or lower bound
  std::size_t upper = 0;
  std::optional<Coloring> coloring;
};

ChromaticNumber chromatic_number(const Graph& g, const SearchOptions& opts = {});

/// Calls `visit` for every homomorphism in lexicographic order of the
/// branching; stops early when visit returns false. Returns the number of
/// homomorphisms visited. Throws BudgetExhausted past the node budget.
std::size_t for_each_homomorphism(const Graph& g, const Graph& h,
                                  const std::function<bool(const VertexMap&)>& visit,
                                  std::uint64_t node_budget = default_node_budget());

/// Homomorphisms found by randomized-value-order searches (seeded), each
/// the first solution of its run. Duplicates possible.
std::vector<VertexMap> sample_homomorphisms(const Graph& g, const Graph& h, std::size_t count,
                                            std::uint64_t seed);

/// A homomorphism G^L -> H stored densely over row-major L-tuples.
struct Polymorphism {
  std::size_t base_size = 0;
  std::size_t arity = 0;
  std::size_t target_size = 0;
  std::vector<Vertex> table;

  Vertex operator()(std::span<const Vertex> args) const {
    return table[encode_tuple(args, base_size)];
  }
  friend bool operator==(const Polymorphism&, const Polymorphism&) = default;
  friend auto operator<=>(const Polymorphism& a, const Polymorphism& b) {
    return a.table <=> b.table;
  }
};

bool is_polymorphism(const Graph& g, const Graph& h, const Polymorphism& f);

struct PolymorphismSet {
  std::vector<Polymorphism> members;
  bool complete = true;  // false if truncated at the limit
};

/// All of Pol(G,H) at arity L, up to `limit` members.
PolymorphismSet enumerate_polymorphisms(const Graph& g, const Graph& h, std::size_t arity,
                                        std::size_t limit = static_cast<std::size_t>(-1));

Polymorphism projection(std::size_t base_size, std::size_t arity, std::size_t coordinate);

/// pi maps the m coordinates of f into [arity]; the minor is
/// (x_1..x_arity) -> f(x_pi(1), .., x_pi(m)).
struct MinorMap {
  std::vector<std::size_t> pi;
  std::size_t arity = 0;
};

Polymorphism minor(const Polymorphism& f, const MinorMap& pi);

/// Every map [m] -> [n].
std::vector<MinorMap> all_minor_maps(std::size_t m, std::size_t n);

std::vector<std::size_t> essential_coordinates(const Polymorphism& f);

/// Length of the shortest odd closed walk; nullopt when bipartite.
std::optional<std::size_t> odd_girth(const Graph& g);

}  // namespace adjhom
