#pragma once

// JSON and DOT emitters. Keys are sorted and monomial factors are ordered by
// (node, spectral), so output is byte-stable for fixed inputs.

#include <json.hpp>
#include <string>

#include "qtor/crystal.hpp"
#include "qtor/fusion.hpp"
#include "qtor/hecke.hpp"
#include "qtor/modrep.hpp"
#include "qtor/qchar.hpp"
#include "qtor/tableau.hpp"

namespace qtor {

using Json = nlohmann::json;

Json monomial_json(const YMonomial& m);
YMonomial monomial_from_json(const Json& j);

/// {"top", "depth", "cartan", "terms": [{"monomial", "coeff", "height"}]}
Json qchar_json(const QCharacter& x);
QCharacter qchar_from_json(const Json& j, std::shared_ptr<const CartanData> C);
/// One node per monomial, edge m -> m A_{i,l}^{-1} labelled i.
std::string qchar_dot(const QCharacter& x);

Json identity_json(const IdentityReport& r);
Json tsystem_json(const TSystemReport& r);
Json octahedron_json(const OctahedronReport& r);
Json tableau_json(const TableauCompareReport& r);
Json walk_json(const YMonomial& seed, const std::vector<int>& ops, const WalkResult& w);

Json relation_report_json(const RelationReport& r);
RelationReport relation_report_from_json(const Json& j);
Json lcharacter_json(const LCharacterReport& r);
Json companion_json(const HeckeCompanion& h);
Json coassoc_json(const CoassocReport& r);

template <class S>
Json matrix_json(const SparseMatrix<S>& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(scalar_str(m.get(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Field>
Json hecke_module_json(const HeckeModule<Field>& M) {
  Json j;
  j["l"] = M.l;
  j["field"] = M.field.name();
  j["basis"] = M.labels;
  for (int i = 1; i < M.l; ++i) j["sigma"][std::to_string(i)] = matrix_json(M.sig(i));
  for (int i = 1; i <= M.l; ++i) j["z"][std::to_string(i)] = matrix_json(M.zz(i));
  return j;
}

template <class Field>
Json lattice_json(const SubmoduleLattice<Field>& L) {
  Json j;
  j["dim"] = L.dim;
  j["irreducible"] = L.irreducible;
  j["semisimple"] = L.semisimple;
  j["algebra_dim"] = L.algebra_dim;
  j["burnside_consistent"] = L.consistent;
  j["composition_dims"] = L.composition_dims;
  Json subs = Json::array();
  for (const auto& s : L.submodules) {
    Json rows = Json::array();
    for (const auto& r : s.rows) {
      Json row = Json::array();
      for (const auto& x : r) row.push_back(scalar_str(x));
      rows.push_back(std::move(row));
    }
    subs.push_back({{"dim", s.dim()}, {"basis", rows}});
  }
  j["submodules"] = subs;
  if (!L.note.empty()) j["note"] = L.note;
  return j;
}

template <class Field>
Json stable_line_json(const StableLineReport<Field>& r) {
  return {{"generator", r.generator_text},
          {"same_line_with_T", r.t_normalization},
          {"stable", r.stable},
          {"non_split", r.non_split},
          {"sigma_eigenvalue", scalar_str(r.sigma_eigenvalue)},
          {"z1_eigenvalue", scalar_str(r.z1_eigenvalue)},
          {"z2_eigenvalue", scalar_str(r.z2_eigenvalue)},
          {"composition_dims", r.composition_dims}};
}

Json trials_json(const std::vector<ReducibilityTrial>& t);
Json drinfeld_json(const DrinfeldFromSegments& d);

}  // namespace qtor
