#include "adjhom/reductions.hpp"

#include <bit>
#include <stdexcept>

namespace adjhom {

using nlohmann::json;

PcspTemplate PcspTemplate::make(Graph g, Graph h, const SearchOptions& opts) {
  auto r = find_homomorphism(g, h, opts);
  if (r.outcome == Outcome::unknown)
    throw BudgetExhausted("template witness search exceeded the node budget");
  if (r.outcome == Outcome::none)
    throw std::invalid_argument("not a promise template: G does not map to H");
  return {std::move(g), std::move(h), std::move(*r.map)};
}

PcspTemplate PcspTemplate::cliques(std::size_t n, std::size_t k) {
  if (n < 1 || k < n) throw std::invalid_argument("clique template needs 1 <= n <= k");
  VertexMap w{k, {}};
  for (std::size_t i = 0; i < n; ++i) w.image.push_back(static_cast<Vertex>(i));
  return {clique(static_cast<int>(n)), clique(static_cast<int>(k)), std::move(w)};
}

ReductionStep ReductionStep::apply(FunctorSpec f) {
  ReductionStep s;
  s.kind = Kind::functor;
  s.functor = f;
  return s;
}

ReductionStep ReductionStep::relax(PcspTemplate from, PcspTemplate to, const SearchOptions& opts) {
  if (!maps_to(from.g, to.g, opts))
    throw std::invalid_argument("relaxation needs G -> G'");
  if (!maps_to(to.h, from.h, opts))
    throw std::invalid_argument("relaxation needs H' -> H");
  ReductionStep s;
  s.kind = Kind::relax;
  s.from = std::move(from);
  s.to = std::move(to);
  return s;
}

ReductionStep ReductionStep::product(Graph factor) {
  ReductionStep s;
  s.kind = Kind::product;
  s.factor = std::move(factor);
  return s;
}

std::string ReductionStep::name() const {
  switch (kind) {
    case Kind::functor: return "functor";
    case Kind::relax: return "relax";
    case Kind::product: return "product";
  }
  return {};
}

json ReductionStep::params() const {
  switch (kind) {
    case Kind::functor: return {{"functor", functor.to_string()}};
    case Kind::relax: return json::object();
    case Kind::product: return {{"factor", serialize(*factor)}};
  }
  return json::object();
}

Graph ReductionStep::run(const Graph& instance) const {
  switch (kind) {
    case Kind::functor: return apply_functor(functor, instance);
    case Kind::relax: return instance;
    case Kind::product: return tensor_product(*factor, instance);
  }
  throw std::logic_error("unknown step kind");
}

ReductionStep ReductionStep::from_trace(const std::string& name, const json& params) {
  if (name == "functor") return apply(FunctorSpec::parse(params.at("functor").get<std::string>()));
  if (name == "relax") {
    ReductionStep s;
    s.kind = Kind::relax;
    return s;
  }
  if (name == "product") return product(parse_graph(params.at("factor").get<std::string>()));
  throw std::invalid_argument("unknown reduction step '" + name + "'");
}

json ReductionTrace::to_json() const {
  json steps_json = json::array();
  for (const auto& e : steps)
    steps_json.push_back({{"step", e.step},
                          {"params", e.params},
                          {"input_hash", e.input_hash},
                          {"output_hash", e.output_hash}});
  return {{"schema_version", kTraceSchemaVersion}, {"pipeline", pipeline}, {"steps", steps_json}};
}

ReductionTrace ReductionTrace::from_json(const json& j) {
  if (j.at("schema_version").get<int>() != kTraceSchemaVersion)
    throw std::invalid_argument("unsupported trace schema version");
  ReductionTrace t;
  t.pipeline = j.at("pipeline").get<std::string>();
  for (const auto& e : j.at("steps"))
    t.steps.push_back({e.at("step").get<std::string>(), e.at("params"),
                       e.at("input_hash").get<std::string>(), e.at("output_hash").get<std::string>()});
  for (std::size_t i = 1; i < t.steps.size(); ++i)
    if (t.steps[i].input_hash != t.steps[i - 1].output_hash)
      throw std::invalid_argument("trace hashes do not chain at step " + std::to_string(i));
  return t;
}

Pipeline Pipeline::compose(std::string name, std::vector<ReductionStep> steps) {
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const auto& out = steps[i - 1].to;
    const auto& in = steps[i].from;
    if (out && in && (out->g != in->g || out->h != in->h))
      throw std::invalid_argument("pipeline '" + name + "': step " + std::to_string(i - 1) +
                                  " produces a template that step " + std::to_string(i) +
                                  " does not accept");
  }
  Pipeline p;
  p.name_ = std::move(name);
  p.steps_ = std::move(steps);
  return p;
}

std::optional<PcspTemplate> Pipeline::source_template() const {
  return steps_.empty() ? std::nullopt : steps_.front().from;
}

std::optional<PcspTemplate> Pipeline::target_template() const {
  return steps_.empty() ? std::nullopt : steps_.back().to;
}

std::pair<Graph, ReductionTrace> Pipeline::run(const Graph& instance) const {
  ReductionTrace trace{name_, {}};
  Graph current = instance;
  for (const auto& s : steps_) {
    Graph next = s.run(current);
    trace.steps.push_back({s.name(), s.params(), graph_hash(current), graph_hash(next)});
    current = std::move(next);
  }
  return {std::move(current), std::move(trace)};
}

Graph replay(const ReductionTrace& trace, const Graph& instance) {
  Graph current = instance;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& e = trace.steps[i];
    if (graph_hash(current) != e.input_hash)
      throw std::invalid_argument("replay: input hash mismatch at step " + std::to_string(i));
    current = ReductionStep::from_trace(e.step, e.params).run(current);
    if (graph_hash(current) != e.output_hash)
      throw std::invalid_argument("replay: output hash mismatch at step " + std::to_string(i));
  }
  return current;
}

std::pair<Graph, ReductionTrace> reduce_adjoint(const ReductionStep& step, const Graph& instance) {
  bool allowed = step.kind == ReductionStep::Kind::product;
  if (step.kind == ReductionStep::Kind::functor) {
    using K = FunctorSpec::Kind;
    auto k = step.functor.kind;
    allowed = k == K::lambda || k == K::gamma || k == K::delta || k == K::sym;
  }
  if (!allowed)
    throw std::invalid_argument("reduce_adjoint: step '" + step.name() + "' is not a thin left adjoint");
  return Pipeline::compose("adjoint", {step}).run(instance);
}

namespace {

std::size_t b_of(std::size_t n) { return static_cast<std::size_t>(central_binomial(n)); }

}  // namespace

Pipeline arc_pipeline(std::size_t n, std::size_t k) {
  auto step = ReductionStep::apply({FunctorSpec::Kind::delta, 1});
  step.from = PcspTemplate::cliques(b_of(n), b_of(k));
  step.to = PcspTemplate::cliques(n, k);
  return Pipeline::compose("arc", {step});
}

Pipeline universal_pipeline(std::size_t n, std::size_t k) {
  auto step = ReductionStep::apply({FunctorSpec::Kind::universal, 1});
  step.from = PcspTemplate::cliques(n, k);
  step.to = PcspTemplate::cliques(n + 1, k + 1);
  return Pipeline::compose("universal", {step});
}

Pipeline log_chain_pipeline(std::size_t n, std::size_t k) {
  if (k < 1) throw std::invalid_argument("log-chain needs k >= 1");
  std::size_t m = static_cast<std::size_t>(std::bit_width(k)) - 1;
  auto relax = ReductionStep::relax(PcspTemplate::cliques(b_of(n), k),
                                    PcspTemplate::cliques(b_of(n), b_of(m)));
  auto arc = arc_pipeline(n, m).steps().front();
  return Pipeline::compose("log-chain", {relax, arc});
}

Pipeline identity_pipeline() { return Pipeline::compose("identity", {}); }

Pipeline builtin_pipeline(const std::string& name, std::size_t n, std::size_t k) {
  if (name == "arc") return arc_pipeline(n, k);
  if (name == "universal") return universal_pipeline(n, k);
  if (name == "log-chain") return log_chain_pipeline(n, k);
  if (name == "identity") return identity_pipeline();
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    auto head = name.substr(0, colon);
    auto param = name.substr(colon + 1);
    if (head == "lambda")
      return Pipeline::compose(name, {ReductionStep::apply(FunctorSpec::parse("lambda:" + param))});
    if (head == "gamma-omega")
      return Pipeline::compose(name, {ReductionStep::apply(FunctorSpec::parse("gamma:" + param))});
  }
  throw std::invalid_argument("unknown pipeline '" + name + "'");
}

Pipeline pipeline_from_json(const json& j) {
  std::vector<ReductionStep> steps;
  for (const auto& s : j.at("steps"))
    steps.push_back(ReductionStep::from_trace(s.at("step").get<std::string>(),
                                              s.value("params", json::object())));
  return Pipeline::compose(j.value("name", std::string("custom")), std::move(steps));
}

// ------------------------------------------------------- colouring transfer

Coloring color_lift(const Coloring& arc_coloring, const Graph& g) {
  auto dg = arc_digraph(g);
  if (auto bad = first_conflict(dg, arc_coloring)) {
    const auto& a = g.arcs();
    std::string what = "improper colouring of the arc digraph";
    if (bad->first < a.size() && bad->second < a.size())
      what += " at arcs (" + std::to_string(a[bad->first].first) + "," +
              std::to_string(a[bad->first].second) + ") -> (" + std::to_string(a[bad->second].first) +
              "," + std::to_string(a[bad->second].second) + ")";
    throw std::invalid_argument(what);
  }
  if (arc_coloring.colors > 31) throw std::invalid_argument("color_lift supports at most 31 colours");
  Coloring lifted{std::size_t{1} << arc_coloring.colors, std::vector<std::uint32_t>(g.size(), 0)};
  std::vector<std::uint64_t> sets(g.size(), 0);
  for (std::size_t i = 0; i < g.arcs().size(); ++i)
    sets[g.arcs()[i].second] |= std::uint64_t{1} << arc_coloring.assignment[i];
  for (Vertex v = 0; v < g.size(); ++v) lifted.assignment[v] = static_cast<std::uint32_t>(sets[v]);
  if (auto bad = first_conflict(g, lifted))
    throw std::logic_error("color_lift produced a conflict at arc (" + std::to_string(bad->first) +
                           "," + std::to_string(bad->second) + ")");
  return lifted;
}

std::uint64_t colex_unrank(std::uint64_t rank, std::size_t n, std::size_t r) {
  std::uint64_t mask = 0;
  // Pick elements from the top: the largest c with C(c, i) <= rank.
  auto binom = [](std::size_t a, std::size_t b) -> std::uint64_t {
    if (b > a) return 0;
    unsigned __int128 c = 1;
    for (std::size_t i = 1; i <= b; ++i) c = c * (a - b + i) / i;
    return static_cast<std::uint64_t>(c);
  };
  if (rank >= binom(n, r)) throw std::invalid_argument("colex rank out of range");
  std::size_t top = n;
  for (std::size_t i = r; i >= 1; --i) {
    std::size_t c = i - 1;
    while (c + 1 < top && binom(c + 1, i) <= rank) ++c;
    mask |= std::uint64_t{1} << c;
    rank -= binom(c, i);
    top = c;
  }
  return mask;
}

Coloring color_push(const Coloring& coloring, const Graph& g, std::size_t n) {
  if (n > 62) throw std::invalid_argument("color_push needs n <= 62");
  auto bn = central_binomial(n);
  if (coloring.colors > bn)
    throw std::invalid_argument("color_push needs at most b(n) = " + std::to_string(bn) + " colours");
  if (auto bad = first_conflict(g, coloring))
    throw std::invalid_argument("improper input colouring at arc (" + std::to_string(bad->first) +
                                "," + std::to_string(bad->second) + ")");
  std::vector<std::uint64_t> phi(g.size());
  for (Vertex v = 0; v < g.size(); ++v) phi[v] = colex_unrank(coloring.assignment[v], n, n / 2);
  Coloring pushed{n, {}};
  for (const auto& [u, v] : g.arcs())
    pushed.assignment.push_back(static_cast<std::uint32_t>(std::countr_zero(phi[u] & ~phi[v])));
  if (auto bad = first_conflict(arc_digraph(g), pushed))
    throw std::logic_error("color_push produced a conflict between arcs " +
                           std::to_string(bad->first) + " and " + std::to_string(bad->second));
  return pushed;
}

}  // namespace adjhom
