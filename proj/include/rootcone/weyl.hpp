#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
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

namespace rootcone {

inline void require_valid_system(const RootSystem& rs) {
  ValidationReport v = validate(rs);
  if (!v.valid) throw DomainError("invalid root system: " + v.detail);
}

/// Reflection sigma_i as a lattice matrix: x -> x + ell_i(x) E_i.
inline IntMat reflection(const RootSystem& rs, int i) {
  require_valid_system(rs);
  if (i < 0 || i >= rs.size()) throw StructuralError("root index out of range");
  const Root& r = rs.roots[static_cast<std::size_t>(i)];
  IntMat m(rs.rank);
  for (int a = 0; a < rs.rank; ++a)
    for (int b = 0; b < rs.rank; ++b) {
      Rat v = r.E[a] * r.ell[b];
      if (a == b) v += 1;
      if (v.get_den() != 1)
        throw DomainError("reflection matrix is not integral at root " +
                          std::to_string(i + 1));
      m.at(a, b) = v.get_num();
    }
  return m;
}

inline std::vector<IntMat> reflections(const RootSystem& rs) {
  std::vector<IntMat> out;
  out.reserve(static_cast<std::size_t>(rs.size()));
  for (int i = 0; i < rs.size(); ++i) out.push_back(reflection(rs, i));
  return out;
}

struct GroupElement {
  std::vector<int> word;
  IntMat mat;
  IntMat inv;
};

/// Composes a word; entry word[0] acts first.  Reflections are involutions,
/// so the inverse is the reversed word.
inline GroupElement word_to_element(const RootSystem& rs, const std::vector<int>& word) {
  std::vector<IntMat> gen = reflections(rs);
  IntMat m = IntMat::identity(rs.rank);
  IntMat inv = IntMat::identity(rs.rank);
  for (int i : word) {
    if (i < 0 || i >= rs.size()) throw StructuralError("word letter out of range");
    m = gen[static_cast<std::size_t>(i)] * m;
    inv = inv * gen[static_cast<std::size_t>(i)];
  }
  return GroupElement{word, std::move(m), std::move(inv)};
}

/// Word ball of the reflection group; matrix equality is group equality.
inline BallResult group_ball(const RootSystem& rs, int depth,
                             std::size_t limit = 1000000) {
  std::vector<IntMat> gen = reflections(rs);
  return enumerate_ball(rs.rank, gen, gen, depth, limit);
}

/// Number of new group elements per word length, zero-padded to depth.
inline std::vector<std::size_t> growth_series(const RootSystem& rs, int depth,
                                              std::size_t limit = 1000000) {
  return group_ball(rs, depth, limit).new_per_level;
}

struct RelationReport {
  struct Pair {
    int i = 0, j = 0;
    int expected = 0;  // Coxeter entry; 0 encodes infinity
    int observed = 0;  // least power <= bound giving the identity; 0 if none
    bool ok = false;
  };
  int power_bound = 0;
  std::vector<Pair> pairs;
  bool all_ok = true;
};

/// Checks the order of every product sigma_i sigma_j against the Coxeter
/// matrix by explicit matrix powers up to the bound.
inline RelationReport verify_relations(const RootSystem& rs, int power_bound = 50) {
  CoxeterMatrix cm = coxeter_matrix(rs);  // validates
  std::vector<IntMat> gen = reflections(rs);
  RelationReport rep;
  rep.power_bound = power_bound;
  const IntMat id = IntMat::identity(rs.rank);
  for (int i = 0; i < rs.size(); ++i)
    for (int j = i + 1; j < rs.size(); ++j) {
      IntMat prod = gen[static_cast<std::size_t>(i)] * gen[static_cast<std::size_t>(j)];
      IntMat acc = id;
      int observed = 0;
      for (int k = 1; k <= power_bound; ++k) {
        acc = prod * acc;
        if (acc == id) {
          observed = k;
          break;
        }
      }
      RelationReport::Pair p;
      p.i = i;
      p.j = j;
      p.expected = cm.at(i, j);
      p.observed = observed;
      p.ok = (p.expected == CoxeterMatrix::infinite) ? (observed == 0)
                                                     : (observed == p.expected);
      rep.all_ok = rep.all_ok && p.ok;
      rep.pairs.push_back(p);
    }
  return rep;
}

/// Closed fundamental chamber: all ell_i >= 0.
inline Cone fundamental_chamber(const RootSystem& rs) {
  require_valid_system(rs);
  std::vector<Covec> hs;
  hs.reserve(static_cast<std::size_t>(rs.size()));
  for (const Root& r : rs.roots) hs.push_back(r.ell);
  return Cone::from_facets(rs.rank, hs);
}

struct ChamberStatus {
  bool nonempty = false;
  std::optional<Vec> witness;  // interior point when nonempty
};

/// The open chamber is nonempty iff its closure is full-dimensional.
inline ChamberStatus chamber_nonempty(const RootSystem& rs) {
  Cone c = fundamental_chamber(rs);
  if (c.dimension() != rs.rank) return {};
  return {true, c.interior_point()};
}

/// Indices of the walls through a point of the closed chamber, 0-based.
inline std::vector<int> stratum(const RootSystem& rs, const Vec& x) {
  require_valid_system(rs);
  if (x.size() != rs.rank) throw StructuralError("point rank mismatch");
  std::vector<int> out;
  for (int i = 0; i < rs.size(); ++i) {
    int s = sgn(pair(rs.roots[static_cast<std::size_t>(i)].ell, x));
    if (s < 0) throw DomainError("point lies outside the closed chamber");
    if (s == 0) out.push_back(i);
  }
  return out;
}

enum class PivotRule { LowestIndex, Randomized };

struct DominanceResult {
  bool decided = false;
  Vec representative;      // dominant point when decided, last iterate otherwise
  std::vector<int> word;   // applied reflections; word[0] acted first
  long steps = 0;
};

/// Reflects across violated walls until no pairing is negative.  With the
/// optional certificate xi (positive on every E_i) each step strictly
/// decreases xi, so failure to settle within the cap means the input is
/// outside the reach of the certificate, and the result is undecided.
inline DominanceResult make_dominant(const RootSystem& rs, Vec x,
                                     const std::optional<Covec>& xi = std::nullopt,
                                     long step_cap = 10000,
                                     PivotRule rule = PivotRule::LowestIndex,
                                     std::uint64_t seed = 0) {
  require_valid_system(rs);
  if (x.size() != rs.rank) throw StructuralError("point rank mismatch");
  if (xi) {
    if (xi->size() != rs.rank) throw StructuralError("certificate rank mismatch");
    for (const Root& r : rs.roots)
      if (sgn(pair(*xi, r.E)) <= 0)
        throw DomainError("certificate must pair strictly positively with every root");
  }
  Rng rng(seed);
  DominanceResult res;
  std::optional<Rat> level;
  if (xi) level = pair(*xi, x);
  for (long step = 0; step < step_cap; ++step) {
    std::vector<int> violated;
    for (int i = 0; i < rs.size(); ++i)
      if (sgn(pair(rs.roots[static_cast<std::size_t>(i)].ell, x)) < 0) violated.push_back(i);
    if (violated.empty()) {
      res.decided = true;
      res.representative = std::move(x);
      res.steps = step;
      return res;
    }
    int pick = violated.front();
    if (rule == PivotRule::Randomized)
      pick = violated[static_cast<std::size_t>(rng.below(violated.size()))];
    const Root& r = rs.roots[static_cast<std::size_t>(pick)];
    x = x + pair(r.ell, x) * r.E;
    res.word.push_back(pick);
    if (level) {
      Rat next = pair(*xi, x);
      if (!(next < *level))
        throw StructuralError("certificate failed to decrease, descent is broken");
      level = next;
    }
  }
  res.decided = false;
  res.representative = std::move(x);
  res.steps = step_cap;
  return res;
}

struct OrbitResult {
  std::vector<Vec> points;                 // canonical primitives, BFS order
  std::vector<std::size_t> new_per_level;  // zero-padded to depth
  bool closed = false;
};

/// Orbit of a point under words up to the given length.  Points are
/// deduplicated by canonical primitive vector, i.e. up to positive scaling.
inline OrbitResult orbit(const RootSystem& rs, const Vec& start, int depth,
                         std::size_t limit = 1000000) {
  require_valid_system(rs);
  if (start.size() != rs.rank) throw StructuralError("point rank mismatch");
  if (depth < 0) throw DomainError("negative depth");
  OrbitResult out;
  if (start.is_zero()) {
    // Reflections fix the origin; the orbit is trivial.
    out.points.push_back(start);
    out.new_per_level.assign(static_cast<std::size_t>(depth), 0);
    out.closed = true;
    return out;
  }
  std::vector<IntMat> gen = reflections(rs);
  std::unordered_map<std::string, std::size_t> seen;
  out.points.push_back(canonical_primitive(start));
  seen.emplace(key_of(out.points[0]), 0);
  std::vector<std::size_t> frontier = {0};
  for (int level = 1; level <= depth; ++level) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier)
      for (const IntMat& g : gen) {
        Vec y = canonical_primitive(g.apply(out.points[idx]));
        std::string k = key_of(y);
        if (seen.find(k) != seen.end()) continue;
        if (out.points.size() >= limit)
          throw LimitError("orbit exceeded the element budget");
        seen.emplace(std::move(k), out.points.size());
        next.push_back(out.points.size());
        out.points.push_back(std::move(y));
      }
    out.new_per_level.push_back(next.size());
    if (next.empty()) {
      out.closed = true;
      break;
    }
    frontier = std::move(next);
  }
  out.new_per_level.resize(static_cast<std::size_t>(depth), 0);
  return out;
}

struct TilingReport {
  int depth = 0;
  std::size_t translate_count = 0;
  bool base_in_chamber = true;
  struct Overlap {
    std::vector<int> word_a, word_b;
  };
  std::vector<Overlap> overlaps;
  struct Coverage {
    Vec sample;
    bool covered = false;
    std::vector<int> word;  // word of the translate containing the sample
  };
  std::vector<Coverage> coverage;
  std::uint64_t seed = 0;
};

/// Audits the translates w(base) over the depth-ball: pairwise interior
/// disjointness, plus sampled coverage via dominance descent.  Samples are
/// drawn from random translates of random interior points of the base.
inline TilingReport tile_check(const RootSystem& rs, const Cone& base, int depth,
                               int samples, std::uint64_t seed,
                               long dominance_cap = 10000, int jobs = 1,
                               std::size_t limit = 1000000) {
  require_valid_system(rs);
  if (base.ambient_rank() != rs.rank) throw StructuralError("base rank mismatch");
  if (base.dimension() != rs.rank)
    throw DomainError("tiling base must be full-dimensional");
  if (samples < 0 || jobs < 1) throw DomainError("bad tile parameters");

  TilingReport rep;
  rep.depth = depth;
  rep.seed = seed;
  for (const Vec& r : base.rays())
    for (const Root& root : rs.roots)
      if (sgn(pair(root.ell, r)) < 0) rep.base_in_chamber = false;

  BallResult ball = group_ball(rs, depth, limit);
  std::vector<Cone> translates;
  translates.reserve(ball.elements.size());
  for (const WordElement& w : ball.elements)
    translates.push_back(base.transformed(w.mat, w.inv));
  rep.translate_count = translates.size();

  // Pairwise interior overlap scan; (a, b) pairs in ball order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < translates.size(); ++a)
    for (std::size_t b = a + 1; b < translates.size(); ++b) pairs.emplace_back(a, b);
  auto scan = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::pair<std::size_t, std::size_t>> found;
    for (std::size_t k = lo; k < hi; ++k)
      if (interiors_overlap(translates[pairs[k].first], translates[pairs[k].second]))
        found.push_back(pairs[k]);
    return found;
  };
  std::vector<std::pair<std::size_t, std::size_t>> found;
  if (jobs <= 1 || pairs.size() < 64) {
    found = scan(0, pairs.size());
  } else {
    std::size_t chunk = (pairs.size() + static_cast<std::size_t>(jobs) - 1) /
                        static_cast<std::size_t>(jobs);
    std::vector<std::future<std::vector<std::pair<std::size_t, std::size_t>>>> futs;
    for (std::size_t lo = 0; lo < pairs.size(); lo += chunk)
      futs.push_back(std::async(std::launch::async, scan, lo,
                                std::min(lo + chunk, pairs.size())));
    for (auto& f : futs) {
      auto part = f.get();
      found.insert(found.end(), part.begin(), part.end());
    }
  }
  for (auto [a, b] : found)
    rep.overlaps.push_back(TilingReport::Overlap{ball.elements[a].word, ball.elements[b].word});

  // Sampled coverage: descend each sample back to the chamber and check it
  // lands in the base.
  Rng rng(seed);
  const auto& pointed = base.pointed_rays();
  const auto& lin = base.lineality_basis();
  for (int s = 0; s < samples; ++s) {
    Vec p = Vec::zero(rs.rank);
    for (const Vec& r : pointed) p = p + Rat(rng.range(1, 4)) * r;
    for (const Vec& b : lin) p = p + Rat(rng.range(-3, 3)) * b;
    if (pointed.empty() && p.is_zero()) p = base.interior_point();
    const WordElement& w =
        ball.elements[static_cast<std::size_t>(rng.below(ball.elements.size()))];
    Vec q = w.mat.apply(p);
    TilingReport::Coverage cov;
    cov.sample = q;
    DominanceResult dom = make_dominant(rs, q, std::nullopt, dominance_cap);
    if (dom.decided && base.contains(dom.representative) != Containment::Outside) {
      cov.covered = true;
      cov.word.assign(dom.word.rbegin(), dom.word.rend());
    }
    rep.coverage.push_back(std::move(cov));
  }
  return rep;
}

/// Intersection with the closed fundamental chamber.
inline Cone intersect_with_chamber(const RootSystem& rs, const Cone& c) {
  if (c.ambient_rank() != rs.rank) throw StructuralError("cone rank mismatch");
  return intersect(c, fundamental_chamber(rs));
}

}  // namespace rootcone
