#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "adjhom/graph.hpp"
#include "adjhom/hom.hpp"

namespace adjhom {

// ----------------------------------------------------------------- corpora

enum class CorpusKind {
  symmetric_loopless,  // simple undirected graphs
  symmetric,           // undirected, loops allowed
  digraph,             // arbitrary arcs, loops allowed
};

/// One representative per isomorphism class on 1..max_n vertices, ordered by
/// (n, canonical code). max_n <= 5.
std::vector<Graph> graph_corpus(std::size_t max_n, CorpusKind kind);

/// G(n, 1/2) simple graph.
Graph random_graph(std::size_t n, std::mt19937_64& rng);
/// Arcs with probability 0.4, loops with probability 0.1.
Graph random_digraph(std::size_t n, std::mt19937_64& rng);

/// Smallest n with chi <= b(n).
std::size_t poljak_rodl_index(std::size_t chi);

// ------------------------------------------------------------------ suites

struct SuiteOptions {
  unsigned jobs = 1;
  std::uint64_t seed = 20240601;
  std::uint64_t node_budget = default_node_budget();
};

struct PropertyResult {
  std::string suite;
  std::string property;
  bool pass = false;
  std::size_t cases = 0;
  std::string detail;
  std::optional<std::string> counterexample;
  double seconds = 0;
};

/// Runs check(i) for i in [0,count) on `jobs` threads. A failing case
/// returns a description; the result keeps the failure with smallest index,
/// so the outcome does not depend on scheduling.
std::optional<std::string> first_failure(std::size_t count, unsigned jobs,
                                         const std::function<std::optional<std::string>(std::size_t)>& check);

std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown suite.
std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& opts);

nlohmann::json to_json(const PropertyResult& r, bool with_timing = true);

}  // namespace adjhom
