#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adjhom/functors.hpp"
#include "adjhom/graph.hpp"
#include "adjhom/hom.hpp"

namespace adjhom {

/// A promise template (G,H) together with a witness G -> H.
struct PcspTemplate {
  Graph g;
  Graph h;
  VertexMap witness;

  /// Searches for the witness; throws std::invalid_argument if G does not map to H.
  static PcspTemplate make(Graph g, Graph h, const SearchOptions& opts = {});
  static PcspTemplate cliques(std::size_t n, std::size_t k);
};

/// One instance transformation in a pipeline.
struct ReductionStep {
  enum class Kind { functor, relax, product };
  Kind kind = Kind::relax;
  FunctorSpec functor;
  std::optional<Graph> factor;
  std::optional<PcspTemplate> from, to;

  static ReductionStep apply(FunctorSpec f);
  /// Homomorphic relaxation (G,H) -> (G',H'); requires G -> G' and H' -> H.
  static ReductionStep relax(PcspTemplate from, PcspTemplate to, const SearchOptions& opts = {});
  static ReductionStep product(Graph factor);

  std::string name() const;
  nlohmann::json params() const;
  Graph run(const Graph& instance) const;

  /// Rebuilds a step from its trace name and params.
  static ReductionStep from_trace(const std::string& name, const nlohmann::json& params);
};

struct TraceEntry {
  std::string step;
  nlohmann::json params;
  std::string input_hash;
  std::string output_hash;
};

inline constexpr int kTraceSchemaVersion = 1;

struct ReductionTrace {
  std::string pipeline;
  std::vector<TraceEntry> steps;

  nlohmann::json to_json() const;
  static ReductionTrace from_json(const nlohmann::json& j);
};

class Pipeline {
 public:
  /// Rejects adjacent steps whose declared templates do not chain.
  static Pipeline compose(std::string name, std::vector<ReductionStep> steps);

  const std::string& name() const { return name_; }
  const std::vector<ReductionStep>& steps() const { return steps_; }
  std::optional<PcspTemplate> source_template() const;
  std::optional<PcspTemplate> target_template() const;

  std::pair<Graph, ReductionTrace> run(const Graph& instance) const;

 private:
  std::string name_;
  std::vector<ReductionStep> steps_;
};

/// Re-applies every traced step, checking each recorded hash.
Graph replay(const ReductionTrace& trace, const Graph& instance);

/// Instance map of a thin left adjoint: the instance F becomes step(F).
/// Only lambda, gamma, delta, sym and product steps are accepted.
std::pair<Graph, ReductionTrace> reduce_adjoint(const ReductionStep& step, const Graph& instance);

/// Arc-digraph reduction from PCSP(K_b(n), K_b(k)) to PCSP(K_n, K_k).
Pipeline arc_pipeline(std::size_t n, std::size_t k);
/// Universal-vertex reduction from PCSP(K_n, K_k) to PCSP(K_n+1, K_k+1).
Pipeline universal_pipeline(std::size_t n, std::size_t k);
/// Relaxation PCSP(K_b(n), K_k) -> PCSP(K_b(n), K_b(m)), m = floor(log2 k),
/// followed by the arc-digraph step to PCSP(K_n, K_m).
Pipeline log_chain_pipeline(std::size_t n, std::size_t k);
Pipeline identity_pipeline();

/// Named pipelines: `arc`, `universal`, `log-chain` (all using n,k),
/// `lambda:k`, `gamma-omega:k`, `identity`.
Pipeline builtin_pipeline(const std::string& name, std::size_t n, std::size_t k);
/// Pipeline from {"name":.., "steps":[{"step":..,"params":..}, ..]}.
Pipeline pipeline_from_json(const nlohmann::json& j);

/// Colour-set lift: vertex v gets the set of colours on arcs entering v,
/// encoded as an n-bit mask. The input colours arc_digraph(g).
Coloring color_lift(const Coloring& arc_coloring, const Graph& g);

/// Colour push: colour c of g is read as the c-th floor(n/2)-subset of [n]
/// in colexicographic order; arc (u,v) gets min(phi(u) \ phi(v)).
Coloring color_push(const Coloring& coloring, const Graph& g, std::size_t n);

/// Colexicographic unranking of r-subsets of [n] as bitmasks.
std::uint64_t colex_unrank(std::uint64_t rank, std::size_t n, std::size_t r);

}  // namespace adjhom
