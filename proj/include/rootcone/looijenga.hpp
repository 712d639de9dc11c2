#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rootcone/ball.hpp"
#include "rootcone/cone.hpp"
#include "rootcone/errors.hpp"
#include "rootcone/linalg.hpp"
#include "rootcone/rng.hpp"
#include "rootcone/roots.hpp"
#include "rootcone/weyl.hpp"

namespace rootcone {

/// A group of lattice automorphisms given by generators, together with the
/// invariant cone C it is meant to act on.  Inverses are adjoined to the
/// enumeration alphabet automatically; display[k] is the signed 1-based
/// label of alphabet letter k (negative marks an adjoined inverse).
struct ConeAction {
  int ambient = 0;
  std::vector<IntMat> generators;  // as provided
  Cone domain;
  std::vector<IntMat> alphabet;
  std::vector<IntMat> alphabet_inv;
  std::vector<int> display;
};

inline ConeAction make_cone_action(int ambient, std::vector<IntMat> gens, Cone domain) {
  if (domain.ambient_rank() != ambient)
    throw StructuralError("action domain rank mismatch");
  ConeAction a;
  a.ambient = ambient;
  a.domain = std::move(domain);
  std::vector<IntMat> invs;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].size() != ambient) throw StructuralError("generator rank mismatch");
    Int d = gens[k].det();
    if (d != 1 && d != -1)
      throw DomainError("generator " + std::to_string(k + 1) +
                        " is not a lattice automorphism (det " + d.get_str() + ")");
    invs.push_back(*gens[k].inverse_unimodular());
  }
  a.generators = gens;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    a.alphabet.push_back(gens[k]);
    a.alphabet_inv.push_back(invs[k]);
    a.display.push_back(static_cast<int>(k) + 1);
  }
  for (std::size_t k = 0; k < gens.size(); ++k) {
    bool present = false;
    for (const IntMat& m : a.alphabet)
      if (m == invs[k]) {
        present = true;
        break;
      }
    if (!present) {
      a.alphabet.push_back(invs[k]);
      a.alphabet_inv.push_back(gens[k]);
      a.display.push_back(-(static_cast<int>(k) + 1));
    }
  }
  return a;
}

/// Reflection group of a root system acting on its closed chamber.
inline ConeAction reflection_action(const RootSystem& rs) {
  return make_cone_action(rs.rank, reflections(rs), fundamental_chamber(rs));
}

inline std::vector<int> display_word(const ConeAction& a, const std::vector<int>& word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int k : word) out.push_back(a.display[static_cast<std::size_t>(k)]);
  return out;
}

struct PreservationReport {
  bool preserved = true;
  struct Violation {
    int generator = 0;  // 0-based index into the provided generators
    bool inverse = false;
    Vec ray;
  };
  std::vector<Violation> violations;
};

/// Audits whether every generator (and inverse) maps the domain's rays back
/// into the closed domain.  Reflection groups genuinely move their chamber,
/// so a negative result is informative, not fatal.
inline PreservationReport preserves_domain(const ConeAction& a) {
  PreservationReport rep;
  for (std::size_t k = 0; k < a.generators.size(); ++k) {
    IntMat inv = *a.generators[k].inverse_unimodular();
    for (int dir = 0; dir < 2; ++dir) {
      const IntMat& m = dir ? inv : a.generators[k];
      for (const Vec& r : a.domain.rays())
        if (a.domain.contains(m.apply(r)) == Containment::Outside) {
          rep.preserved = false;
          rep.violations.push_back({static_cast<int>(k), dir == 1, r});
        }
    }
  }
  return rep;
}

inline BallResult action_ball(const ConeAction& a, int depth, std::size_t limit) {
  return enumerate_ball(a.ambient, a.alphabet, a.alphabet_inv, depth, limit);
}

namespace detail {

/// Elements of the ball whose word length is at most `depth`.
inline std::size_t ball_prefix(const BallResult& ball, int depth) {
  std::size_t count = 1;
  for (int k = 0; k < depth && k < static_cast<int>(ball.new_per_level.size()); ++k)
    count += ball.new_per_level[static_cast<std::size_t>(k)];
  return count;
}

}  // namespace detail

struct PiXiResult {
  Cone cone;
  int depth_used = 0;
  bool stabilized = false;
  struct ActiveFacet {
    Covec facet;
    std::vector<int> word;  // alphabet letters; empty for domain facets
    bool from_group = false;
  };
  std::vector<ActiveFacet> active;
};

/// The minimum set Pi_xi = {x in C : xi(gx) >= xi(x) for all g in the
/// depth-ball}, cut out by the halfspaces (xi o g) - xi over the domain.
/// `stabilized` compares against the depth+1 ball.
inline PiXiResult pi_xi(const ConeAction& a, const Covec& xi, int depth,
                        std::size_t limit = 1000000) {
  if (xi.size() != a.ambient) throw StructuralError("xi rank mismatch");
  if (xi.is_zero()) throw DomainError("xi must be nonzero");
  for (const Vec& r : a.domain.pointed_rays())
    if (sgn(pair(xi, r)) <= 0)
      throw DomainError("xi must be strictly positive on the pointed rays of the domain");
  if (depth < 0) throw DomainError("negative depth");

  BallResult ball = action_ball(a, depth + 1, limit);
  const std::size_t at_depth = detail::ball_prefix(ball, depth);

  std::vector<Covec> hs = a.domain.facets();
  std::unordered_map<std::string, std::size_t> first_word;
  auto halfspace_of = [&](const WordElement& w) -> std::optional<Covec> {
    Covec h = pullback(xi, w.mat) - xi;
    if (h.is_zero()) return std::nullopt;
    return canonical_primitive(h);
  };
  for (std::size_t e = 1; e < at_depth; ++e) {
    auto h = halfspace_of(ball.elements[e]);
    if (!h) continue;
    first_word.emplace(key_of(*h), e);
    hs.push_back(std::move(*h));
  }
  PiXiResult res;
  res.depth_used = depth;
  res.cone = Cone::from_facets(a.ambient, hs);

  std::vector<Covec> hs_next = hs;
  for (std::size_t e = at_depth; e < ball.elements.size(); ++e) {
    auto h = halfspace_of(ball.elements[e]);
    if (h) hs_next.push_back(std::move(*h));
  }
  res.stabilized = (res.cone == Cone::from_facets(a.ambient, hs_next));

  for (const Covec& f : res.cone.facets()) {
    PiXiResult::ActiveFacet af;
    af.facet = f;
    auto it = first_word.find(key_of(f));
    if (it != first_word.end()) {
      af.word = ball.elements[it->second].word;
      af.from_group = true;
    }
    res.active.push_back(std::move(af));
  }
  return res;
}

/// True when no non-identity element of the depth-ball fixes xi.
inline bool stabilizer_trivial(const ConeAction& a, const Covec& xi, int depth,
                               std::size_t limit = 1000000) {
  if (xi.size() != a.ambient) throw StructuralError("xi rank mismatch");
  BallResult ball = action_ball(a, depth, limit);
  for (std::size_t e = 1; e < ball.elements.size(); ++e)
    if (pullback(xi, ball.elements[e].mat) == xi) return false;
  return true;
}

struct PolyhedralTypeReport {
  bool exhaustive = false;
  bool passed = false;
  struct Sample {
    Vec sample;
    bool covered = false;
    std::vector<int> word;  // element g with g(sample) in Pi
  };
  std::vector<Sample> coverage;  // samples, or uncovered-region witnesses
  std::optional<std::size_t> group_order;
  std::uint64_t seed = 0;
};

/// Checks that the translates g(Pi) cover the domain.  With samples == 0
/// the group must close within the depth, and coverage is decided exactly
/// by subtracting every translate from the domain; leftover full-dimensional
/// regions (relative to the domain's span) are reported by witness points.
/// With samples > 0, random translate points of the domain are pushed back
/// into Pi through the depth-ball.
inline PolyhedralTypeReport polyhedral_type_check(const ConeAction& a, const Cone& pi,
                                                  int depth, int samples,
                                                  std::uint64_t seed,
                                                  std::size_t limit = 1000000) {
  if (pi.ambient_rank() != a.ambient) throw StructuralError("pi rank mismatch");
  PolyhedralTypeReport rep;
  rep.seed = seed;
  rep.exhaustive = (samples == 0);

  // A minimum set of lower dimension than the domain cannot tile it.
  if (pi.dimension() < a.domain.dimension()) {
    rep.passed = false;
    PolyhedralTypeReport::Sample s;
    s.sample = a.domain.relative_interior_point();
    rep.coverage.push_back(std::move(s));
    return rep;
  }

  if (rep.exhaustive) {
    BallResult ball = action_ball(a, depth, limit);
    if (!ball.closed)
      throw DomainError("exhaustive coverage needs the full group; the ball "
                        "did not close at this depth");
    rep.group_order = ball.elements.size();
    const int want_dim = a.domain.dimension();
    std::vector<Cone> regions = {a.domain};
    for (const WordElement& w : ball.elements) {
      Cone t = pi.transformed(w.mat, w.inv);
      std::vector<Cone> next;
      for (const Cone& r : regions)
        for (const Covec& f : t.facets()) {
          std::vector<Covec> hs = r.facets();
          hs.push_back(-f);
          Cone piece = Cone::from_facets(a.ambient, hs);
          if (piece.dimension() == want_dim) next.push_back(std::move(piece));
          if (next.size() > 20000)
            throw LimitError("coverage subdivision exploded");
        }
      regions = std::move(next);
      if (regions.empty()) break;
    }
    rep.passed = regions.empty();
    for (const Cone& r : regions) {
      PolyhedralTypeReport::Sample s;
      s.sample = r.relative_interior_point();
      rep.coverage.push_back(std::move(s));
    }
    return rep;
  }

  BallResult ball = action_ball(a, depth, limit);
  const std::size_t sample_prefix = detail::ball_prefix(ball, depth > 0 ? depth - 1 : 0);
  Rng rng(seed);
  const auto& pointed = a.domain.pointed_rays();
  const auto& lin = a.domain.lineality_basis();
  rep.passed = true;
  for (int s = 0; s < samples; ++s) {
    Vec p = Vec::zero(a.ambient);
    for (const Vec& r : pointed) p = p + Rat(rng.range(1, 4)) * r;
    for (const Vec& b : lin) p = p + Rat(rng.range(-3, 3)) * b;
    if (p.is_zero()) p = a.domain.relative_interior_point();
    const WordElement& w =
        ball.elements[static_cast<std::size_t>(rng.below(sample_prefix))];
    PolyhedralTypeReport::Sample entry;
    entry.sample = w.mat.apply(p);
    for (const WordElement& g : ball.elements) {
      if (pi.contains(g.mat.apply(entry.sample)) != Containment::Outside) {
        entry.covered = true;
        entry.word = g.word;
        break;
      }
    }
    rep.passed = rep.passed && entry.covered;
    rep.coverage.push_back(std::move(entry));
  }
  return rep;
}

}  // namespace rootcone
