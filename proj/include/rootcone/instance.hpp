#pragma once
// Instance files.
//
// An instance is a JSON object describing one root system together with
// optional named cones and named group actions:
//
//   {
//     "rank": 2,
//     "roots": [
//       {"E": [1, 0], "ell": [-2, 1], "label": "a1"},
//       {"E": [0, 1], "ell": [1, -2]}
//     ],
//     "cones":   {"quadrant": {"facets": [[1, 0], [0, 1]]}},
//     "actions": {"swap": {"generators": [[[0, 1], [1, 0]]], "cone": "quadrant"}}
//   }
//
// All coordinates are integers; values too large for a JSON number may be
// written as decimal strings.  A cone carries exactly one of "rays" or
// "facets".  An action's "cone" names its domain and may be omitted, in
// which case the domain is the full space.
//
// Error split: ParseError for malformed JSON, wrong JSON types or array
// shapes, bad integer literals and unknown keys; InvalidInstanceError for
// well-formed input that describes a broken instance (empty root list, a
// cone with both representations, a zero generator, a dangling reference).

#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rootcone/cone.hpp"
#include "rootcone/errors.hpp"
#include "rootcone/linalg.hpp"
#include "rootcone/looijenga.hpp"
#include "rootcone/numeric.hpp"
#include "rootcone/roots.hpp"

namespace rootcone {

struct ActionSpec {
  std::vector<IntMat> generators;
  std::string cone;  // domain cone name; empty selects the full space
};

struct Instance {
  RootSystem system;
  std::map<std::string, Cone> cones;
  std::map<std::string, ActionSpec> actions;
};

namespace detail {

inline const nlohmann::json& member(const nlohmann::json& obj, const char* key,
                                    const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError("missing key '" + std::string(key) + "' in " + where);
  return *it;
}

inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known) throw ParseError("unknown key '" + it.key() + "' in " + where);
  }
}

inline Int parse_integer(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer())
    return Int(j.dump());  // dump() of an integer is its exact decimal text
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (k == s.size())
      throw ParseError("bad integer literal '" + s + "' in " + where);
    for (; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        throw ParseError("bad integer literal '" + s + "' in " + where);
    return Int(s);
  }
  throw ParseError("expected an integer in " + where);
}

inline std::vector<Rat> parse_coord_list(const nlohmann::json& j, int rank,
                                         const std::string& where) {
  if (!j.is_array()) throw ParseError("expected a coordinate array in " + where);
  if (static_cast<int>(j.size()) != rank)
    throw ParseError(where + ": expected " + std::to_string(rank) +
                     " coordinates, found " + std::to_string(j.size()));
  std::vector<Rat> out;
  out.reserve(j.size());
  for (const auto& e : j) out.emplace_back(parse_integer(e, where));
  return out;
}

inline IntMat parse_matrix(const nlohmann::json& j, int rank,
                           const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    throw ParseError(where + ": expected " + std::to_string(rank) +
                     " matrix rows");
  IntMat m(rank);
  for (int r = 0; r < rank; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != rank)
      throw ParseError(where + ": row " + std::to_string(r + 1) +
                       " must have " + std::to_string(rank) + " entries");
    for (int c = 0; c < rank; ++c)
      m.at(r, c) = parse_integer(row[static_cast<std::size_t>(c)], where);
  }
  return m;
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be a JSON object");
  detail::reject_unknown_keys(j, {"rank", "roots", "cones", "actions"}, "top level");

  const auto& jrank = detail::member(j, "rank", "top level");
  if (!jrank.is_number_integer())
    throw ParseError("'rank' must be an integer");
  long rank = jrank.get<long>();
  if (rank <= 0) throw InvalidInstanceError("'rank' must be positive");

  Instance inst;
  inst.system.rank = static_cast<int>(rank);
  inst.system.kind = "file";

  const auto& jroots = detail::member(j, "roots", "top level");
  if (!jroots.is_array()) throw ParseError("'roots' must be an array");
  if (jroots.empty()) throw InvalidInstanceError("'roots' must not be empty");
  int index = 0;
  for (const auto& jr : jroots) {
    ++index;
    const std::string where = "root " + std::to_string(index);
    if (!jr.is_object()) throw ParseError(where + " must be an object");
    detail::reject_unknown_keys(jr, {"E", "ell", "label"}, where);
    Root r;
    r.E = Vec(detail::parse_coord_list(detail::member(jr, "E", where),
                                       inst.system.rank, where + " ('E')"));
    r.ell = Covec(detail::parse_coord_list(detail::member(jr, "ell", where),
                                           inst.system.rank, where + " ('ell')"));
    if (auto it = jr.find("label"); it != jr.end()) {
      if (!it->is_string()) throw ParseError(where + ": 'label' must be a string");
      r.label = it->get<std::string>();
    } else {
      r.label = "r" + std::to_string(index);
    }
    inst.system.roots.push_back(std::move(r));
  }

  if (auto jc = j.find("cones"); jc != j.end()) {
    if (!jc->is_object()) throw ParseError("'cones' must be an object");
    for (auto it = jc->begin(); it != jc->end(); ++it) {
      const std::string where = "cone '" + it.key() + "'";
      const auto& body = it.value();
      if (!body.is_object()) throw ParseError(where + " must be an object");
      detail::reject_unknown_keys(body, {"rays", "facets"}, where);
      const bool has_rays = body.contains("rays");
      const bool has_facets = body.contains("facets");
      if (has_rays == has_facets)
        throw InvalidInstanceError(where +
                                   ": exactly one of 'rays' or 'facets' required");
      const auto& list = body[has_rays ? "rays" : "facets"];
      if (!list.is_array()) throw ParseError(where + ": generator list must be an array");
      try {
        if (has_rays) {
          std::vector<Vec> rays;
          for (const auto& v : list)
            rays.emplace_back(detail::parse_coord_list(v, inst.system.rank, where));
          inst.cones.emplace(it.key(), Cone::from_rays(inst.system.rank, rays));
        } else {
          std::vector<Covec> facets;
          for (const auto& v : list)
            facets.emplace_back(detail::parse_coord_list(v, inst.system.rank, where));
          inst.cones.emplace(it.key(), Cone::from_facets(inst.system.rank, facets));
        }
      } catch (const DomainError& e) {
        throw InvalidInstanceError(where + ": " + e.what());
      }
    }
  }

  if (auto ja = j.find("actions"); ja != j.end()) {
    if (!ja->is_object()) throw ParseError("'actions' must be an object");
    for (auto it = ja->begin(); it != ja->end(); ++it) {
      const std::string where = "action '" + it.key() + "'";
      const auto& body = it.value();
      if (!body.is_object()) throw ParseError(where + " must be an object");
      detail::reject_unknown_keys(body, {"generators", "cone"}, where);
      ActionSpec spec;
      const auto& gens = detail::member(body, "generators", where);
      if (!gens.is_array()) throw ParseError(where + ": 'generators' must be an array");
      int g = 0;
      for (const auto& jm : gens) {
        ++g;
        spec.generators.push_back(detail::parse_matrix(
            jm, inst.system.rank, where + ", generator " + std::to_string(g)));
      }
      if (auto jn = body.find("cone"); jn != body.end()) {
        if (!jn->is_string()) throw ParseError(where + ": 'cone' must be a string");
        spec.cone = jn->get<std::string>();
        if (inst.cones.find(spec.cone) == inst.cones.end())
          throw InvalidInstanceError(where + ": unknown cone '" + spec.cone + "'");
      }
      inst.actions.emplace(it.key(), std::move(spec));
    }
  }

  return inst;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

/// Wraps a catalog system as an instance with no extra cones or actions.
inline Instance builtin_instance(const std::string& name) {
  Instance inst;
  inst.system = builtin_system(name);
  return inst;
}

/// Stable digest of the canonicalized instance.  Cones contribute their
/// canonical ray lists, so the digest is representation independent.
inline std::string instance_digest(const Instance& inst) {
  Fnv1a h;
  h.feed("rank=" + std::to_string(inst.system.rank));
  for (const Root& r : inst.system.roots) {
    h.feed("|root " + r.label);
    for (int i = 0; i < inst.system.rank; ++i) h.feed(" " + rat_to_string(r.E[i]));
    h.feed(" /");
    for (int i = 0; i < inst.system.rank; ++i)
      h.feed(" " + rat_to_string(r.ell[i]));
  }
  for (const auto& [name, c] : inst.cones) {
    h.feed("|cone " + name);
    for (const Vec& v : c.rays()) {
      h.feed(" ;");
      for (int i = 0; i < v.size(); ++i) h.feed(" " + rat_to_string(v[i]));
    }
  }
  for (const auto& [name, a] : inst.actions) {
    h.feed("|action " + name + " on '" + a.cone + "'");
    for (const IntMat& m : a.generators) h.feed(" ;" + m.key());
  }
  return h.hex();
}

namespace detail {

inline nlohmann::ordered_json emit_integer(const Rat& q, const std::string& where) {
  if (q.get_den() != 1)
    throw DomainError(where + ": non-integral coordinate " + rat_to_string(q));
  const Int z(q.get_num());
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

template <class Tag>
nlohmann::ordered_json emit_coords(const Coords<Tag>& v, const std::string& where) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(emit_integer(v[i], where));
  return a;
}

}  // namespace detail

/// Normalized form of an instance: cones appear through their canonical ray
/// lists, labels are filled in.  Serializing a parsed serialization is a
/// fixed point.
inline nlohmann::ordered_json serialize_instance(const Instance& inst) {
  nlohmann::ordered_json o;
  o["rank"] = inst.system.rank;
  auto roots = nlohmann::ordered_json::array();
  for (const Root& r : inst.system.roots) {
    nlohmann::ordered_json jr;
    jr["E"] = detail::emit_coords(r.E, "root '" + r.label + "'");
    jr["ell"] = detail::emit_coords(r.ell, "root '" + r.label + "'");
    jr["label"] = r.label;
    roots.push_back(std::move(jr));
  }
  o["roots"] = std::move(roots);
  if (!inst.cones.empty()) {
    nlohmann::ordered_json jc;
    for (const auto& [name, c] : inst.cones) {
      auto rays = nlohmann::ordered_json::array();
      for (const Vec& v : c.rays())
        rays.push_back(detail::emit_coords(v, "cone '" + name + "'"));
      jc[name] = {{"rays", std::move(rays)}};
    }
    o["cones"] = std::move(jc);
  }
  if (!inst.actions.empty()) {
    nlohmann::ordered_json ja;
    for (const auto& [name, a] : inst.actions) {
      nlohmann::ordered_json spec;
      auto gens = nlohmann::ordered_json::array();
      for (const IntMat& m : a.generators) {
        auto rows = nlohmann::ordered_json::array();
        for (int r = 0; r < m.size(); ++r) {
          auto row = nlohmann::ordered_json::array();
          for (int c = 0; c < m.size(); ++c)
            row.push_back(detail::emit_integer(Rat(m.at(r, c)), "action '" + name + "'"));
          rows.push_back(std::move(row));
        }
        gens.push_back(std::move(rows));
      }
      spec["generators"] = std::move(gens);
      if (!a.cone.empty()) spec["cone"] = a.cone;
      ja[name] = std::move(spec);
    }
    o["actions"] = std::move(ja);
  }
  return o;
}

/// Resolves an action spec against the instance's cone table.
inline ConeAction resolve_action(const Instance& inst, const std::string& name) {
  auto it = inst.actions.find(name);
  if (it == inst.actions.end())
    throw InvalidInstanceError("unknown action '" + name + "'");
  Cone domain = it->second.cone.empty()
                    ? Cone::full_space(inst.system.rank)
                    : inst.cones.at(it->second.cone);
  return make_cone_action(inst.system.rank, it->second.generators, domain);
}

}  // namespace rootcone
