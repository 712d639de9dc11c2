#pragma once
// JSON serialization of computation results.
//
// Every report is an object {command, instance, params, result}.  The
// instance block carries a digest so results can be tied back to their
// input.  Conventions, applied uniformly:
//   - rationals are decimal strings ("3", "-5/2"), never floats;
//   - root and generator indices are 1-based, with a sign for inverse
//     letters where a generator is not an involution;
//   - Coxeter entries are integers, infinite order is the string "inf".

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rootcone/cone.hpp"
#include "rootcone/instance.hpp"
#include "rootcone/linalg.hpp"
#include "rootcone/looijenga.hpp"
#include "rootcone/numeric.hpp"
#include "rootcone/roots.hpp"
#include "rootcone/weyl.hpp"

namespace rootcone {

using Json = nlohmann::ordered_json;

inline Json json_of(const Rat& q) { return rat_to_string(q); }

template <class Tag>
Json json_of(const Coords<Tag>& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(rat_to_string(v[i]));
  return a;
}

/// 1-based word over involutive generators.
inline Json json_word(const std::vector<int>& word) {
  Json a = Json::array();
  for (int i : word) a.push_back(i + 1);
  return a;
}

/// Word already mapped to signed display letters.
inline Json json_display(const std::vector<int>& letters) {
  Json a = Json::array();
  for (int i : letters) a.push_back(i);
  return a;
}

inline Json json_of(const Cone& c) {
  Json o;
  o["dimension"] = c.dimension();
  o["lineality_dim"] = c.lineality_dim();
  Json lin = Json::array();
  for (const Vec& v : c.lineality_basis()) lin.push_back(json_of(v));
  o["lineality"] = lin;
  Json rays = Json::array();
  for (const Vec& v : c.pointed_rays()) rays.push_back(json_of(v));
  o["rays"] = rays;
  Json facets = Json::array();
  for (const Covec& f : c.facets()) facets.push_back(json_of(f));
  o["facets"] = facets;
  return o;
}

inline Json json_of(const ValidationReport& r) {
  Json o;
  o["valid"] = r.valid;
  if (!r.valid) {
    o["axiom"] = r.axiom;
    Json idx = Json::array();
    for (int i : r.roots) idx.push_back(i + 1);
    o["roots"] = idx;
    o["detail"] = r.detail;
  }
  return o;
}

inline Json json_of(const CoxeterMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.size; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.size; ++j) {
      int e = m.at(i, j);
      if (e == CoxeterMatrix::infinite)
        row.push_back("inf");
      else
        row.push_back(e);
    }
    rows.push_back(row);
  }
  return rows;
}

inline Json json_of(const DominanceResult& r) {
  Json o;
  o["decided"] = r.decided;
  o["representative"] = json_of(r.representative);
  o["word"] = json_word(r.word);
  o["steps"] = r.steps;
  return o;
}

inline Json json_of(const OrbitResult& r) {
  Json o;
  o["size"] = r.points.size();
  o["closed"] = r.closed;
  o["new_per_level"] = r.new_per_level;
  Json pts = Json::array();
  for (const Vec& v : r.points) pts.push_back(json_of(v));
  o["points"] = pts;
  return o;
}

inline Json json_of(const TilingReport& r) {
  Json o;
  o["depth"] = r.depth;
  o["translates"] = r.translate_count;
  o["base_in_chamber"] = r.base_in_chamber;
  Json ov = Json::array();
  for (const auto& p : r.overlaps) {
    Json e;
    e["word_a"] = json_word(p.word_a);
    e["word_b"] = json_word(p.word_b);
    ov.push_back(e);
  }
  o["overlaps"] = ov;
  Json cov = Json::array();
  std::size_t covered = 0;
  for (const auto& s : r.coverage) {
    Json e;
    e["sample"] = json_of(s.sample);
    e["covered"] = s.covered;
    if (s.covered) e["word"] = json_word(s.word);
    if (s.covered) ++covered;
    cov.push_back(e);
  }
  o["samples_covered"] = covered;
  o["samples_total"] = r.coverage.size();
  o["samples"] = cov;
  return o;
}

inline Json json_of(const ConeAction& a, const PiXiResult& r) {
  Json o;
  o["depth_used"] = r.depth_used;
  o["stabilized"] = r.stabilized;
  o["cone"] = json_of(r.cone);
  Json act = Json::array();
  for (const auto& f : r.active) {
    Json e;
    e["facet"] = json_of(f.facet);
    e["from_group"] = f.from_group;
    if (f.from_group) e["word"] = json_display(display_word(a, f.word));
    act.push_back(e);
  }
  o["active_facets"] = act;
  return o;
}

inline Json json_of(const ConeAction& a, const PolyhedralTypeReport& r) {
  Json o;
  o["mode"] = r.exhaustive ? "exhaustive" : "sampled";
  o["passed"] = r.passed;
  if (r.group_order) o["group_order"] = *r.group_order;
  Json cov = Json::array();
  for (const auto& s : r.coverage) {
    Json e;
    e["sample"] = json_of(s.sample);
    e["covered"] = s.covered;
    if (s.covered) e["word"] = json_display(display_word(a, s.word));
    cov.push_back(e);
  }
  o["witnesses"] = cov;
  return o;
}

inline Json json_of(const BallResult& b) {
  Json o;
  o["depth"] = b.depth;
  o["closed"] = b.closed;
  o["total"] = b.elements.size();
  o["new_per_level"] = b.new_per_level;
  return o;
}

inline Json json_of(const RelationReport& r) {
  Json o;
  o["all_consistent"] = r.all_ok;
  o["power_bound"] = r.power_bound;
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    Json e;
    e["i"] = p.i + 1;
    e["j"] = p.j + 1;
    e["expected"] = p.expected == 0 ? Json("inf") : Json(p.expected);
    e["observed"] = p.observed == 0 ? Json("none") : Json(p.observed);
    e["consistent"] = p.ok;
    pairs.push_back(e);
  }
  o["pairs"] = pairs;
  return o;
}

/// Common wrapper.  `params` must already contain every knob that affects
/// the result, including the seed for randomized commands.
inline Json report_envelope(const std::string& command, const Instance& inst,
                            Json params) {
  Json o;
  o["command"] = command;
  Json meta;
  meta["kind"] = inst.system.kind.empty() ? "file" : inst.system.kind;
  meta["rank"] = inst.system.rank;
  meta["roots"] = inst.system.size();
  meta["digest"] = instance_digest(inst);
  o["instance"] = meta;
  o["params"] = std::move(params);
  o["result"] = nullptr;
  return o;
}

inline std::string render_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace rootcone
