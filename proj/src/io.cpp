#include "adjhom/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adjhom {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Graph read_graph_file(const std::string& path) {
  try {
    return parse_graph(read_text_file(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

json hom_certificate(const Graph& g, const Graph& h, const VertexMap& m) {
  return {{"schema_version", kSchemaVersion},
          {"type", "hom"},
          {"source", serialize(g)},
          {"target", serialize(h)},
          {"map", m.image}};
}

json chromatic_certificate(const Graph& g, const ChromaticNumber& chi) {
  json j{{"schema_version", kSchemaVersion}, {"type", "chromatic"}, {"graph", serialize(g)}};
  switch (chi.kind) {
    case ChromaticNumber::Kind::exact:
      j["status"] = "exact";
      j["value"] = chi.value;
      break;
    case ChromaticNumber::Kind::has_loop:
      j["status"] = "has-loop";
      break;
    case ChromaticNumber::Kind::bounds:
      j["status"] = "bounds";
      j["lower"] = chi.value;
      j["upper"] = chi.upper;
      break;
  }
  if (chi.coloring) {
    j["colors"] = chi.coloring->colors;
    j["coloring"] = chi.coloring->assignment;
  }
  return j;
}

json polymorphism_certificate(const Graph& g, const Graph& h, const Polymorphism& f) {
  return {{"schema_version", kSchemaVersion},
          {"type", "polymorphism"},
          {"source", serialize(g)},
          {"target", serialize(h)},
          {"arity", f.arity},
          {"table", f.table}};
}

json reduction_certificate(const Graph& instance, const Graph& output, const ReductionTrace& t) {
  return {{"schema_version", kSchemaVersion},
          {"type", "reduction"},
          {"instance", serialize(instance)},
          {"output", serialize(output)},
          {"trace", t.to_json()}};
}

namespace {

void require_schema(const json& j) {
  if (!j.is_object() || !j.contains("schema_version") || !j.contains("type"))
    throw std::invalid_argument("not a certificate: schema_version/type missing");
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw std::invalid_argument("unsupported schema_version");
}

Graph graph_field(const json& j, const char* key) { return parse_graph(j.at(key).get<std::string>()); }

}  // namespace

LoadedPolymorphism load_polymorphism(const json& j) {
  require_schema(j);
  const auto type = j.at("type").get<std::string>();
  LoadedPolymorphism out{graph_field(j, "source"), graph_field(j, "target"), {}};
  out.f.base_size = out.source.size();
  out.f.target_size = out.target.size();
  if (type == "hom") {
    out.f.arity = 1;
    out.f.table = j.at("map").get<std::vector<Vertex>>();
  } else if (type == "polymorphism") {
    out.f.arity = j.at("arity").get<std::size_t>();
    out.f.table = j.at("table").get<std::vector<Vertex>>();
  } else {
    throw std::invalid_argument("expected a hom or polymorphism certificate, got " + type);
  }
  if (out.f.arity == 0) throw std::invalid_argument("arity must be positive");
  if (out.f.table.size() != checked_pow(out.f.base_size, out.f.arity))
    throw std::invalid_argument("table size does not match |V|^arity");
  return out;
}

Verdict verify_certificate(const json& j, const SearchOptions& opts) {
  try {
    require_schema(j);
    const auto type = j.at("type").get<std::string>();
    if (type == "hom") {
      auto g = graph_field(j, "source"), h = graph_field(j, "target");
      VertexMap m{h.size(), j.at("map").get<std::vector<Vertex>>()};
      if (auto bad = first_violation(g, h, m))
        return {false, "arc (" + std::to_string(bad->first) + "," + std::to_string(bad->second) +
                           ") is not mapped to an arc"};
      return {true, "homomorphism validated on " + std::to_string(g.arc_count()) + " arcs"};
    }
    if (type == "polymorphism") {
      auto p = load_polymorphism(j);
      if (!is_polymorphism(p.source, p.target, p.f)) return {false, "table is not a homomorphism G^L -> H"};
      return {true, "polymorphism of arity " + std::to_string(p.f.arity) + " validated"};
    }
    if (type == "chromatic") {
      auto g = graph_field(j, "graph");
      const auto status = j.at("status").get<std::string>();
      if (status == "has-loop") return {g.has_loop(), g.has_loop() ? "graph has a loop" : "graph has no loop"};
      Coloring c{j.at("colors").get<std::size_t>(), j.at("coloring").get<std::vector<std::uint32_t>>()};
      if (c.assignment.size() != g.size() || !is_proper(g, c)) return {false, "coloring is not proper"};
      if (status == "bounds") return {true, "upper bound coloring validated"};
      const auto value = j.at("value").get<std::size_t>();
      if (c.colors != value) return {false, "coloring uses a different palette than the claimed value"};
      if (value > 0 && g.size() > 0 && value > 1) {
        auto r = find_homomorphism(g, clique(static_cast<int>(value - 1)), opts);
        if (r.outcome == Outcome::unknown) return {false, "lower bound inconclusive under budget"};
        if (r.outcome == Outcome::found) return {false, "graph is colourable with fewer colours"};
      }
      return {true, "chromatic number " + std::to_string(value) + " validated"};
    }
    if (type == "reduction") {
      auto instance = graph_field(j, "instance"), output = graph_field(j, "output");
      auto trace = ReductionTrace::from_json(j.at("trace"));
      auto replayed = replay(trace, instance);
      if (!(replayed == output)) return {false, "replayed output differs"};
      return {true, "trace of " + std::to_string(trace.steps.size()) + " steps replayed"};
    }
    return {false, "unknown certificate type " + type};
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
}

json homology_json(const HomologySummary& h) {
  return {{"euler", h.euler},
          {"betti0", h.betti0},
          {"betti1", h.betti1},
          {"torsion1", h.torsion1},
          {"face_counts", h.face_counts}};
}

json topology_report(const Z2Complex& k) {
  json j{{"schema_version", kSchemaVersion},
         {"vertices", k.vertex_count},
         {"maximal_faces", k.maximal_faces}};
  j.update(homology_json(homology(k)));
  const bool free = is_free(k);
  j["free"] = free;
  j["quotient"] = free ? homology_json(homology(quotient(k))) : json(nullptr);
  return j;
}

json winding_json(const WindingProfile& w) {
  json v = json::array();
  for (const auto& s : w.violations()) v.push_back(s);
  return {{"schema_version", kSchemaVersion}, {"a", w.a}, {"d", w.d}, {"violations", v}};
}

}  // namespace adjhom
