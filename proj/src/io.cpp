#include "qtor/io.hpp"

#include <algorithm>
#include <sstream>

namespace qtor {

Json monomial_json(const YMonomial& m) { return m.str(); }

YMonomial monomial_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("monomial must be a JSON string", 0);
  return YMonomial::parse(j.get<std::string>());
}

namespace {
std::vector<std::pair<YMonomial, QTerm>> ordered_terms(const QCharacter& x) {
  std::vector<std::pair<YMonomial, QTerm>> v(x.terms.begin(), x.terms.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second.height < b.second.height; });
  return v;
}
}  // namespace

Json qchar_json(const QCharacter& x) {
  Json terms = Json::array();
  for (const auto& [m, t] : ordered_terms(x))
    terms.push_back({{"monomial", m.str()}, {"coeff", t.coeff}, {"height", t.height}});
  Json j;
  j["top"] = x.top.str();
  j["depth"] = x.depth;
  if (x.cartan) j["cartan"] = x.cartan->name();
  j["terms"] = terms;
  return j;
}

QCharacter qchar_from_json(const Json& j, std::shared_ptr<const CartanData> C) {
  try {
    QCharacter x;
    x.cartan = std::move(C);
    x.top = YMonomial::parse(j.at("top").get<std::string>());
    x.depth = j.at("depth").get<int>();
    for (const auto& t : j.at("terms"))
      x.terms[YMonomial::parse(t.at("monomial").get<std::string>())] =
          QTerm{t.at("coeff").get<std::int64_t>(), t.value("height", 0)};
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("q-character JSON: ") + e.what(), 0);
  }
}

std::string qchar_dot(const QCharacter& x) {
  std::ostringstream os;
  os << "digraph qchar {\n  rankdir=TB;\n";
  std::map<YMonomial, int> id;
  for (const auto& [m, t] : ordered_terms(x)) {
    const int k = static_cast<int>(id.size());
    id[m] = k;
    os << "  n" << k << " [label=\"" << m.str();
    if (t.coeff != 1) os << " (x" << t.coeff << ")";
    os << "\"];\n";
  }
  auto edges = character_edges(x);
  std::sort(edges.begin(), edges.end(), [&](const QEdge& a, const QEdge& b) {
    return std::tuple(id.at(a.from), id.at(a.to), a.node, a.l) < std::tuple(id.at(b.from), id.at(b.to), b.node, b.l);
  });
  for (const auto& e : edges)
    os << "  n" << id.at(e.from) << " -> n" << id.at(e.to) << " [label=\"" << e.node << "\"];\n";
  os << "}\n";
  return os.str();
}

Json identity_json(const IdentityReport& r) {
  Json mm = Json::array();
  for (const auto& m : r.mismatches) mm.push_back({{"monomial", m.monomial.str()}, {"lhs", m.lhs}, {"rhs", m.rhs}});
  return {{"holds", r.holds}, {"depth", r.depth}, {"lhs_terms", r.lhs_terms}, {"mismatches", mm}, {"notes", r.notes}};
}

Json tsystem_json(const TSystemReport& r) {
  Json j = identity_json(r);
  Json factors = Json::array();
  for (const auto& f : r.s.factors) factors.push_back({{"node", f.node}, {"k", f.k}, {"l", f.l}});
  j["s_term"] = factors;
  Json defect = Json::object();
  for (const auto& [i, d] : r.nu_defect) defect[std::to_string(i)] = d;
  j["nu_defect"] = defect;
  return j;
}

Json octahedron_json(const OctahedronReport& r) {
  return {{"holds", r.holds}, {"cells", r.cells}, {"failures", r.failures}};
}

Json tableau_json(const TableauCompareReport& r) {
  Json w = Json::array();
  for (const auto& m : r.mismatches)
    w.push_back({{"monomial", m.monomial.str()},
                 {"tableau_count", m.tableau_count},
                 {"qchar_coeff", m.qchar_coeff},
                 {"tableau", m.tableau}});
  return {{"agree", r.agree},         {"n", r.n},
          {"k", r.k},                 {"shift", r.shift},
          {"l", r.l},                 {"depth", r.depth},
          {"tableaux", r.tableaux},   {"qchar_terms", r.qchar_terms},
          {"excess_is_height", r.excess_is_height}, {"mismatches", w}};
}

Json walk_json(const YMonomial& seed, const std::vector<int>& ops, const WalkResult& w) {
  Json path = Json::array();
  for (const auto& m : w.path) path.push_back(m.str());
  Json j{{"seed", seed.str()}, {"ops", ops}, {"path", path}, {"ties", w.ties}};
  if (w.dead_end) j["dead_end"] = {{"step", w.dead_end->first}, {"node", w.dead_end->second}};
  return j;
}

Json relation_report_json(const RelationReport& r) {
  Json fams = Json::array();
  for (const auto& f : r.families) {
    Json j{{"family", f.family},     {"ranges", f.ranges},   {"instances", f.instances},
           {"evaluations", f.evaluations}, {"skipped", f.skipped}, {"pass", f.pass}};
    if (f.witness)
      j["witness"] = {{"relation", f.witness->relation}, {"vector", f.witness->vector}, {"residual", f.witness->residual}};
    fams.push_back(std::move(j));
  }
  return {{"all_pass", r.all_pass()}, {"families", fams}};
}

RelationReport relation_report_from_json(const Json& j) {
  try {
    RelationReport r;
    for (const auto& f : j.at("families")) {
      FamilyResult x;
      x.family = f.at("family").get<std::string>();
      x.ranges = f.at("ranges").get<std::string>();
      x.instances = f.at("instances").get<long>();
      x.evaluations = f.at("evaluations").get<long>();
      x.skipped = f.at("skipped").get<long>();
      x.pass = f.at("pass").get<bool>();
      if (f.contains("witness"))
        x.witness = RelationWitness{f["witness"].at("relation").get<std::string>(),
                                    f["witness"].at("vector").get<std::string>(),
                                    f["witness"].at("residual").get<std::string>()};
      r.families.push_back(std::move(x));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("relation report JSON: ") + e.what(), 0);
  }
}

Json lcharacter_json(const LCharacterReport& r) {
  Json per = Json::array();
  for (const auto& [b, m] : r.per_vector) per.push_back({{"vector", b.str()}, {"l_weight", m.str()}});
  Json terms = Json::array();
  for (const auto& [m, c] : r.terms) terms.push_back({{"monomial", m.str()}, {"coeff", c}});
  Json j{{"per_vector", per}, {"terms", terms}, {"modulus", r.modulus}, {"has_display", r.has_display}};
  j["shift"] = r.shift ? Json(*r.shift) : Json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json companion_json(const HeckeCompanion& h) {
  Json xs = Json::array(), ys = Json::array();
  for (const auto& x : h.x_spectrum) xs.push_back(x.str());
  for (const auto& y : h.y_spectrum) ys.push_back(y.str());
  return {{"L", h.L},
          {"field", h.field.name()},
          {"XY_eq_eps4_YX", h.relation_holds},
          {"m_basis_matches", h.m_basis_matches},
          {"spectra_match", h.spectra_match},
          {"x_spectrum", xs},
          {"y_spectrum", ys},
          {"X", matrix_json(h.X)},
          {"Y", matrix_json(h.Y)}};
}

Json coassoc_json(const CoassocReport& r) {
  Json res = Json::array();
  for (const auto& c : r.results) {
    Json j{{"generator", c.generator},
           {"symbolic_equal", c.symbolic_equal},
           {"matrix_equal", c.matrix_equal},
           {"symbolic_terms", c.symbolic_terms}};
    if (!c.mismatch.empty()) j["mismatch"] = c.mismatch;
    res.push_back(std::move(j));
  }
  return {{"r", r.r}, {"r2", r.r2}, {"order", r.order}, {"all_pass", r.all_pass()}, {"results", res}};
}

Json trials_json(const std::vector<ReducibilityTrial>& t) {
  Json a = Json::array();
  for (const auto& x : t)
    a.push_back({{"q", x.q}, {"a1", x.a1}, {"a2", x.a2}, {"ratio_is_eps", x.ratio_is_eps},
                 {"reducible", x.reducible}, {"agree", x.agree()}});
  return a;
}

Json drinfeld_json(const DrinfeldFromSegments& d) {
  Json c = Json::object();
  for (const auto& [i, v] : d.centers) c[std::to_string(i)] = v;
  return {{"n", d.n}, {"centers", c}, {"polynomials", d.str()}, {"warnings", d.warnings}};
}

}  // namespace qtor
