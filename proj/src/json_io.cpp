#include "fkn/json_io.hpp"

#include <map>

#include "fkn/errors.hpp"

namespace fkn {

namespace {

Json one_based(const std::vector<std::uint32_t> &v) {
  Json out = Json::array();
  for (auto x : v)
    out.push_back(x + 1);
  return out;
}

std::vector<std::uint32_t> zero_based(const Json &j) {
  std::vector<std::uint32_t> out;
  for (const auto &x : j) {
    const auto v = x.get<std::uint32_t>();
    if (v == 0)
      throw DomainError("expected 1-based index");
    out.push_back(v - 1);
  }
  return out;
}

ExplorationStatus status_from_string(const std::string &s) {
  for (auto st : {ExplorationStatus::Exists, ExplorationStatus::FailsAt, ExplorationStatus::BoundExceeded})
    if (s == to_string(st))
      return st;
  throw DomainError("unknown status " + s);
}

SweepMethod method_from_string(const std::string &s) {
  for (auto m : {SweepMethod::Cartan, SweepMethod::Inherited, SweepMethod::Heuristic, SweepMethod::Bfs})
    if (s == to_string(m))
      return m;
  throw DomainError("unknown method " + s);
}

} // namespace

Json root_json(const RootOfUnity &z) { return {{"order", z.order()}, {"exponent", z.exponent()}}; }

Json braiding_json(const DiagonalBraiding &braiding) {
  Json rows = Json::array();
  for (std::uint32_t i = 0; i < braiding.rank(); ++i) {
    Json row = Json::array();
    for (std::uint32_t j = 0; j < braiding.rank(); ++j)
      row.push_back(braiding.b(i, j));
    rows.push_back(std::move(row));
  }
  return {{"order", braiding.order()}, {"rank", braiding.rank()}, {"exponents", std::move(rows)}};
}

Json diagram_json(const GeneralizedDynkinDiagram &diagram) {
  Json vertices = Json::array();
  for (const auto &v : diagram.vertices)
    vertices.push_back(v.at_order(diagram.order).exponent());
  Json edges = Json::array();
  for (const auto &e : diagram.edges)
    edges.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"label", e.label.at_order(diagram.order).exponent()}});
  return {{"order", diagram.order}, {"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

Json cartan_json(const CartanData &cartan) {
  Json rows = Json::array();
  for (std::uint32_t i = 0; i < cartan.rank; ++i) {
    Json row = Json::array();
    for (std::uint32_t j = 0; j < cartan.rank; ++j)
      row.push_back(cartan.is_defined(i, j) ? Json(cartan.at(i, j)) : Json(nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json exploration_json(const DiagonalBraiding &braiding, const ExplorationResult &result) {
  Json j = {{"status", to_string(result.status)},
            {"objects", result.objects.size()},
            {"morphisms", result.morphism_count}};
  if (result.status == ExplorationStatus::FailsAt) {
    j["witness"] = one_based(result.witness);
    j["failingVertex"] = result.failing_vertex + 1;
    auto reached = apply_word(braiding, result.witness);
    if (const auto *b = std::get_if<DiagonalBraiding>(&reached)) {
      j["failingLabel"] = b->b(result.failing_vertex, result.failing_vertex);
      Json incident = Json::array();
      for (std::uint32_t k = 0; k < b->rank(); ++k)
        if (k != result.failing_vertex && b->edge_exponent(result.failing_vertex, k) != 0)
          incident.push_back({{"vertex", k + 1}, {"label", b->edge_exponent(result.failing_vertex, k)}});
      j["incidentEdges"] = std::move(incident);
    }
  }
  return j;
}

Json sweep_entry_json(const SweepEntry &entry, bool timings) {
  Json j = {{"n", entry.n},
            {"status", to_string(entry.status)},
            {"method", to_string(entry.method)},
            {"heuristicUsed", entry.heuristic_used()}};
  if (entry.status == ExplorationStatus::FailsAt) {
    j["witness"] = one_based(entry.witness);
    j["failingVertex"] = entry.failing_vertex + 1;
  }
  if (entry.inherited_from)
    j["inheritedFrom"] = *entry.inherited_from;
  if (entry.objects)
    j["objects"] = *entry.objects;
  if (timings)
    j["elapsed"] = entry.elapsed;
  return j;
}

SweepEntry sweep_entry_from_json(const Json &j) {
  SweepEntry e;
  e.n = j.at("n").get<std::uint32_t>();
  e.status = status_from_string(j.at("status").get<std::string>());
  e.method = method_from_string(j.at("method").get<std::string>());
  if (e.status == ExplorationStatus::FailsAt) {
    e.witness = zero_based(j.at("witness"));
    e.failing_vertex = j.at("failingVertex").get<std::uint32_t>() - 1;
  }
  if (j.contains("inheritedFrom"))
    e.inherited_from = j["inheritedFrom"].get<std::uint32_t>();
  if (j.contains("objects"))
    e.objects = j["objects"].get<std::uint64_t>();
  if (j.contains("elapsed"))
    e.elapsed = j["elapsed"].get<double>();
  return e;
}

Json sweep_report_json(const SweepReport &report, bool timings) {
  Json entries = Json::array();
  std::vector<std::uint32_t> exists;
  for (const auto &e : report.entries) {
    entries.push_back(sweep_entry_json(e, timings));
    if (e.status == ExplorationStatus::Exists)
      exists.push_back(e.n);
  }
  return {{"maxN", report.max_n}, {"entries", std::move(entries)}, {"exists", exists}};
}

Json subsystem_json(const SubsystemRecord &r) {
  Json members = Json::array();
  for (const auto &m : r.members)
    members.push_back(m);
  Json j = {{"n", r.n},
            {"subset", r.representative},
            {"members", std::move(members)},
            {"rank", r.representative.size()},
            {"diagram", diagram_json(r.diagram)},
            {"cartan", cartan_json(r.cartan)},
            {"cartanType", r.cartan_type},
            {"finite", r.finite},
            {"minimalN", r.minimal_n},
            {"primitive", r.primitive}};
  if (r.positive_root_count)
    j["positiveRootCount"] = *r.positive_root_count;
  if (r.dimension) {
    j["dimension"] = *r.dimension;
    j["rootOrders"] = r.root_orders;
    j["factorization"] = r.factorization;
  }
  if (!r.annotation.empty())
    j["annotation"] = r.annotation;
  return j;
}

Json group_info_json(const GroupParams &params) {
  params.validate();
  const auto reflections = enumerate_reflections(params);
  std::map<std::uint32_t, std::uint64_t> census;
  std::uint64_t transpositions = 0;
  for (const auto &s : reflections) {
    ++census[s.order(params.m)];
    transpositions += s.is_diagonal() ? 0 : 1;
  }
  Json by_order = Json::array();
  for (const auto &[d, count] : census)
    by_order.push_back({{"order", d}, {"count", count}});
  return {{"group", params.to_string()},
          {"m", params.m},
          {"p", params.p},
          {"n", params.n},
          {"order", params.order().get_str()},
          {"reflections", reflections.size()},
          {"reflectionFormula", reflection_count_formula(params)},
          {"transpositionType", transpositions},
          {"diagonalType", reflections.size() - transpositions},
          {"reflectionsByOrder", std::move(by_order)}};
}

Json yd_decomposition_json(const YDModule &module) {
  Json summands = Json::array();
  for (const auto &s : decompose_yd(module)) {
    Json basis = Json::array();
    for (auto b : s.members)
      basis.push_back(module.basis[b].to_string());
    summands.push_back({{"label", s.label}, {"dim", s.members.size()}, {"basis", std::move(basis)}});
  }
  Json j = {{"group", module.params.to_string()},
            {"dim", module.dim()},
            {"scalarOrder", module.scalar_order},
            {"summands", summands},
            {"summandCount", summands.size()},
            {"braidIndecomposable", is_braid_indecomposable(module)}};
  if (module.params.n >= 2)
    j["summandCountFormula"] = summand_count_formula(module.params);
  return j;
}

Json hilbert_json(const HilbertData &data, const std::vector<std::string> &labels) {
  Json multi = Json::array();
  for (const auto &[degree, dim] : data.per_multidegree)
    multi.push_back({{"degree", degree}, {"dim", dim}});
  return {{"maxDegree", data.max_degree},
          {"labels", labels},
          {"perDegree", data.per_degree},
          {"perMultidegree", std::move(multi)},
          {"total", data.total()}};
}

Json comparison_json(const HilbertComparison &c, const std::vector<std::string> &labels) {
  return {{"nichols", hilbert_json(c.nichols, labels)},
          {"quadratic", hilbert_json(c.quadratic, labels)},
          {"divergence", c.divergence ? Json(*c.divergence) : Json(nullptr)}};
}

} // namespace fkn
