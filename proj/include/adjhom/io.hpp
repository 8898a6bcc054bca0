#pragma once

#include <string>

#include <json.hpp>

#include "adjhom/graph.hpp"
#include "adjhom/hom.hpp"
#include "adjhom/reductions.hpp"
#include "adjhom/topology.hpp"

namespace adjhom {

inline constexpr int kSchemaVersion = 1;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Graph read_graph_file(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

/// {"type":"hom", "source", "target", "map"}; graphs are embedded as text.
nlohmann::json hom_certificate(const Graph& g, const Graph& h, const VertexMap& m);
/// {"type":"chromatic", "graph", "value", "coloring"}.
nlohmann::json chromatic_certificate(const Graph& g, const ChromaticNumber& chi);
/// {"type":"polymorphism", "source", "target", "arity", "table"}.
nlohmann::json polymorphism_certificate(const Graph& g, const Graph& h, const Polymorphism& f);
/// {"type":"reduction", "instance", "output", "trace"}.
nlohmann::json reduction_certificate(const Graph& instance, const Graph& output, const ReductionTrace& t);

struct LoadedPolymorphism {
  Graph source;
  Graph target;
  Polymorphism f;
};

/// Accepts a polymorphism certificate or a hom certificate (arity 1).
LoadedPolymorphism load_polymorphism(const nlohmann::json& j);

struct Verdict {
  bool ok = false;
  std::string message;
};

/// Re-validates any certificate emitted by the tools from scratch.
Verdict verify_certificate(const nlohmann::json& j, const SearchOptions& opts = {});

nlohmann::json homology_json(const HomologySummary& h);
/// Report on a complex. When the involution is free it also covers the quotient.
nlohmann::json topology_report(const Z2Complex& k);
nlohmann::json winding_json(const WindingProfile& w);

}  // namespace adjhom
