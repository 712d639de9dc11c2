#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rootcone/errors.hpp"
#include "rootcone/linalg.hpp"
#include "rootcone/numeric.hpp"

namespace rootcone {

/// One root: a lattice vector E together with the functional ell whose
/// kernel carries the reflection mirror.
struct Root {
  Vec E;
  Covec ell;
  std::string label;
};

struct RootSystem {
  int rank = 0;
  std::vector<Root> roots;
  std::string kind;  // free-form origin tag, echoed in reports

  int size() const { return static_cast<int>(roots.size()); }
};

inline void check_structure(const RootSystem& rs) {
  if (rs.rank <= 0) throw StructuralError("root system rank must be positive");
  if (rs.roots.empty()) throw StructuralError("root system needs at least one root");
  for (const Root& r : rs.roots)
    if (r.E.size() != rs.rank || r.ell.size() != rs.rank)
      throw StructuralError("root data rank mismatch");
}

struct ValidationReport {
  bool valid = true;
  std::string axiom;       // empty when valid
  std::vector<int> roots;  // offending indices, 0-based
  std::string detail;
};

namespace detail {

inline bool proportional(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

}  // namespace detail

/// Axiom check.  Order is fixed: linear independence of every pair (E side
/// before ell side), then self-pairing -2, then nonnegative cross pairings,
/// then symmetry of vanishing.  The first violation is reported.
inline ValidationReport validate(const RootSystem& rs) {
  check_structure(rs);
  const int r = rs.size();
  auto name1 = [&](int i) { return std::to_string(i + 1); };

  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      if (detail::proportional(rs.roots[static_cast<std::size_t>(i)].E.entries(),
                               rs.roots[static_cast<std::size_t>(j)].E.entries()))
        return {false, "independence", {i, j},
                "E-pair linearly dependent: roots " + name1(i) + ", " + name1(j)};
      if (detail::proportional(rs.roots[static_cast<std::size_t>(i)].ell.entries(),
                               rs.roots[static_cast<std::size_t>(j)].ell.entries()))
        return {false, "independence", {i, j},
                "ell-pair linearly dependent: roots " + name1(i) + ", " + name1(j)};
    }

  for (int i = 0; i < r; ++i) {
    Rat p = pair(rs.roots[static_cast<std::size_t>(i)].ell, rs.roots[static_cast<std::size_t>(i)].E);
    if (p != -2)
      return {false, "self-pairing", {i},
              "pair(ell" + name1(i) + ", E" + name1(i) + ") = " + rat_to_string(p) +
                  ", expected -2"};
  }

  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      Rat p = pair(rs.roots[static_cast<std::size_t>(i)].ell, rs.roots[static_cast<std::size_t>(j)].E);
      if (sgn(p) < 0)
        return {false, "nonnegative-pairing", {i, j},
                "pair(ell" + name1(i) + ", E" + name1(j) + ") = " + rat_to_string(p) +
                    " is negative"};
    }

  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Rat pij = pair(rs.roots[static_cast<std::size_t>(i)].ell, rs.roots[static_cast<std::size_t>(j)].E);
      Rat pji = pair(rs.roots[static_cast<std::size_t>(j)].ell, rs.roots[static_cast<std::size_t>(i)].E);
      if ((sgn(pij) == 0) != (sgn(pji) == 0))
        return {false, "zero-symmetry", {i, j},
                "exactly one of pair(ell" + name1(i) + ", E" + name1(j) + "), pair(ell" +
                    name1(j) + ", E" + name1(i) + ") vanishes"};
    }

  return {};
}

/// Symmetric matrix of pairwise reflection orders; 0 encodes infinity.
struct CoxeterMatrix {
  static constexpr int infinite = 0;
  int size = 0;
  std::vector<int> m;  // row-major

  int at(int i, int j) const {
    return m[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) + static_cast<std::size_t>(j)];
  }
};

/// Order of sigma_i sigma_j from the pairing product: 0 -> 2, 1 -> 3,
/// 2 -> 4, 3 -> 6, anything else -> infinite.
inline CoxeterMatrix coxeter_matrix(const RootSystem& rs) {
  ValidationReport v = validate(rs);
  if (!v.valid) throw DomainError("coxeter matrix of an invalid system: " + v.detail);
  const int r = rs.size();
  CoxeterMatrix cm;
  cm.size = r;
  cm.m.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(r), 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      Rat prod = pair(rs.roots[static_cast<std::size_t>(i)].ell, rs.roots[static_cast<std::size_t>(j)].E) *
                 pair(rs.roots[static_cast<std::size_t>(j)].ell, rs.roots[static_cast<std::size_t>(i)].E);
      int mij = CoxeterMatrix::infinite;
      if (prod == 0) mij = 2;
      else if (prod == 1) mij = 3;
      else if (prod == 2) mij = 4;
      else if (prod == 3) mij = 6;
      cm.m[static_cast<std::size_t>(i) * static_cast<std::size_t>(r) + static_cast<std::size_t>(j)] = mij;
    }
  return cm;
}

// ---------------------------------------------------------------------------
// Builtin systems.

namespace detail {

using Cartan = std::vector<std::vector<long>>;

inline Cartan simply_laced(int nodes, const std::vector<std::pair<int, int>>& edges) {
  Cartan a(static_cast<std::size_t>(nodes), std::vector<long>(static_cast<std::size_t>(nodes), 0));
  for (int i = 0; i < nodes; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  for (auto [i, j] : edges) {
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -1;
    a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -1;
  }
  return a;
}

inline std::vector<std::pair<int, int>> chain_edges(int nodes) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < nodes; ++i) e.emplace_back(i, i + 1);
  return e;
}

/// Finite Cartan matrices.  Layouts: A/B/C/F chains; D is a chain
/// 0..n-3 with tips n-2, n-1 on node n-3; E is a chain 0..m with the
/// branch node attached at the canonical position.
inline Cartan finite_cartan(char family, int n) {
  auto bad = [&](const std::string& why) -> Cartan {
    throw InvalidInstanceError("dynkin:" + std::string(1, family) + std::to_string(n) + ": " + why);
  };
  switch (family) {
    case 'A': {
      if (n < 1) return bad("rank must be at least 1");
      return simply_laced(n, chain_edges(n));
    }
    case 'B': {
      if (n < 2) return bad("rank must be at least 2");
      Cartan a = simply_laced(n, chain_edges(n));
      a[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(n) - 2] = -2;
      return a;
    }
    case 'C': {
      if (n < 2) return bad("rank must be at least 2");
      Cartan a = simply_laced(n, chain_edges(n));
      a[static_cast<std::size_t>(n) - 2][static_cast<std::size_t>(n) - 1] = -2;
      return a;
    }
    case 'D': {
      if (n < 4) return bad("rank must be at least 4");
      auto e = chain_edges(n - 2);
      e.emplace_back(n - 3, n - 2);
      e.emplace_back(n - 3, n - 1);
      return simply_laced(n, e);
    }
    case 'E': {
      if (n < 6 || n > 8) return bad("rank must be 6, 7 or 8");
      // Chain 0..n-2 with the branch node n-1 attached: E6 at node 2,
      // E7 at node 3, E8 at node 4.
      auto e = chain_edges(n - 1);
      e.emplace_back(n - 4, n - 1);
      return simply_laced(n, e);
    }
    case 'F': {
      if (n != 4) return bad("F has rank 4 only");
      Cartan a = simply_laced(4, chain_edges(4));
      a[1][2] = -2;
      return a;
    }
    case 'G': {
      if (n != 2) return bad("G has rank 2 only");
      return Cartan{{2, -1}, {-3, 2}};
    }
    default:
      return bad("unknown family");
  }
}

/// Affine (extended) Cartan matrices for the simply-laced families plus
/// the rank-1 double bond.  Node n is the affine vertex.
inline Cartan affine_cartan(char family, int n) {
  auto bad = [&](const std::string& why) -> Cartan {
    throw InvalidInstanceError("affine:" + std::string(1, family) + std::to_string(n) + ": " + why);
  };
  switch (family) {
    case 'A': {
      if (n == 1) return Cartan{{2, -2}, {-2, 2}};
      if (n < 1) return bad("rank must be at least 1");
      auto e = chain_edges(n + 1);
      e.emplace_back(0, n);  // close the cycle
      return simply_laced(n + 1, e);
    }
    case 'D': {
      if (n < 4) return bad("rank must be at least 4");
      // Forks at both ends of a chain on nodes 1..n-3 is the extended
      // diagram; realize it by attaching the affine node n next to the
      // existing fork-free end.
      Cartan base = finite_cartan('D', n);
      for (auto& row : base) row.push_back(0);
      base.emplace_back(static_cast<std::size_t>(n) + 1, 0);
      base[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)] = 2;
      base[static_cast<std::size_t>(n)][1] = -1;
      base[1][static_cast<std::size_t>(n)] = -1;
      return base;
    }
    case 'E': {
      if (n < 6 || n > 8) return bad("rank must be 6, 7 or 8");
      Cartan base = finite_cartan('E', n);
      for (auto& row : base) row.push_back(0);
      base.emplace_back(static_cast<std::size_t>(n) + 1, 0);
      base[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)] = 2;
      int attach = 0;
      if (n == 6) attach = n - 1;  // the short arm's tip
      if (n == 7) attach = n - 2;  // end of the second long arm
      if (n == 8) attach = 0;      // far end of the long arm
      base[static_cast<std::size_t>(n)][static_cast<std::size_t>(attach)] = -1;
      base[static_cast<std::size_t>(attach)][static_cast<std::size_t>(n)] = -1;
      return base;
    }
    default:
      return bad("affine families here are A, D and E");
  }
}

/// Realizes a Cartan matrix as a root system on a rank-2r lattice:
/// E_i = e_i and ell_i = (-row_i | e_i).  The tail coordinates keep the
/// functionals independent even when Cartan rows are proportional, and
/// (0..0|1..1) is always a chamber point.
inline RootSystem realize_cartan(const Cartan& a, const std::string& kind) {
  const int r = static_cast<int>(a.size());
  RootSystem rs;
  rs.rank = 2 * r;
  rs.kind = kind;
  for (int i = 0; i < r; ++i) {
    Root root;
    root.E = Vec::zero(2 * r);
    root.E[i] = 1;
    root.ell = Covec::zero(2 * r);
    for (int j = 0; j < r; ++j) root.ell[j] = -a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    root.ell[r + i] = 1;
    root.label = "a" + std::to_string(i + 1);
    rs.roots.push_back(std::move(root));
  }
  return rs;
}

/// Permutation for the supported diagram automorphisms.
inline std::vector<int> automorphism_perm(char family, int n, const std::string& name) {
  auto bad = [&](const std::string& why) -> std::vector<int> {
    throw InvalidInstanceError("folded:" + std::string(1, family) + std::to_string(n) +
                               ":" + name + ": " + why);
  };
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  if (name == "flip") {
    if (family == 'A') {
      std::reverse(p.begin(), p.end());
      return p;
    }
    if (family == 'E' && n == 6) {
      // Chain 0..4 reversed, branch node 5 fixed.
      p = {4, 3, 2, 1, 0, 5};
      return p;
    }
    return bad("flip applies to A ranks and E6");
  }
  if (name == "swap") {
    if (family == 'D') {
      std::swap(p[static_cast<std::size_t>(n) - 2], p[static_cast<std::size_t>(n) - 1]);
      return p;
    }
    return bad("swap applies to D ranks");
  }
  if (name == "tri") {
    if (family == 'D' && n == 4) {
      // Outer nodes of D4 are 0, 2, 3; rotate them.
      p = {2, 1, 3, 0};
      return p;
    }
    return bad("tri applies to D4");
  }
  return bad("unknown automorphism");
}

}  // namespace detail

/// Folds a simply-laced system along a diagram automorphism: orbit sums on
/// the E side, orbit representatives on the ell side.  The result is
/// revalidated; foldings with adjacent orbit members fail there.
inline RootSystem fold_system(const detail::Cartan& a, const std::vector<int>& perm,
                              const std::string& kind) {
  const int r = static_cast<int>(a.size());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (a[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])][static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] !=
          a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        throw InvalidInstanceError(kind + ": not a diagram automorphism");

  RootSystem base = detail::realize_cartan(a, kind);
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  RootSystem out;
  out.rank = base.rank;
  out.kind = kind;
  int label = 0;
  for (int i = 0; i < r; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> orbit;
    int j = i;
    do {
      seen[static_cast<std::size_t>(j)] = true;
      orbit.push_back(j);
      j = perm[static_cast<std::size_t>(j)];
    } while (j != i);
    Root folded;
    folded.E = Vec::zero(base.rank);
    for (int k : orbit) folded.E = folded.E + base.roots[static_cast<std::size_t>(k)].E;
    folded.ell = base.roots[static_cast<std::size_t>(*std::min_element(orbit.begin(), orbit.end()))].ell;
    folded.label = "a" + std::to_string(++label);
    out.roots.push_back(std::move(folded));
  }
  ValidationReport v = validate(out);
  if (!v.valid)
    throw InvalidInstanceError(kind + ": folding produced an invalid system (" + v.detail + ")");
  return out;
}

struct BuiltinInfo {
  std::string pattern;
  std::string example;
  std::string description;
};

inline const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> cat = {
      {"co2222", "co2222",
       "Cantat-Oguiso (2,2,2,2) hypersurface lattice: rank 4, four roots, every "
       "pairwise Coxeter entry infinite, the Weyl group is a free product of four "
       "order-2 groups"},
      {"dynkin:<X><n>", "dynkin:A2",
       "finite Dynkin families A1.., B2.., C2.., D4.., E6-E8, F4, G2, realized on "
       "a rank-2n lattice with E_i = e_i"},
      {"affine:<X><n>", "affine:A1",
       "affine extensions of A (cycle; A1 is the double bond), D and E"},
      {"folded:<X><n>:<automorphism>", "folded:A3:flip",
       "diagram-automorphism folding of a finite family; automorphisms: flip "
       "(A ranks, E6), swap (D ranks), tri (D4)"},
  };
  return cat;
}

/// Builds a catalog system by name; unknown or ill-formed names raise
/// InvalidInstanceError.
inline RootSystem builtin_system(const std::string& name) {
  if (name == "co2222") {
    RootSystem rs;
    rs.rank = 4;
    rs.kind = "co2222";
    for (int i = 0; i < 4; ++i) {
      Root r;
      r.E = Vec::zero(4);
      for (int j = 0; j < 4; ++j) r.E[j] = (i == j) ? -2 : 2;
      r.ell = Covec::zero(4);
      r.ell[i] = 1;
      r.label = "a" + std::to_string(i + 1);
      rs.roots.push_back(std::move(r));
    }
    return rs;
  }

  auto parse_family = [&](const std::string& body, const std::string& ctx) {
    if (body.size() < 2) throw InvalidInstanceError(ctx + ": expected <family><rank>");
    char fam = body[0];
    for (std::size_t i = 1; i < body.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(body[i])))
        throw InvalidInstanceError(ctx + ": bad rank in '" + body + "'");
    int n = std::stoi(body.substr(1));
    if (n > 16) throw InvalidInstanceError(ctx + ": rank capped at 16");
    return std::make_pair(fam, n);
  };

  if (name.rfind("dynkin:", 0) == 0) {
    auto [fam, n] = parse_family(name.substr(7), name);
    return detail::realize_cartan(detail::finite_cartan(fam, n), name);
  }
  if (name.rfind("affine:", 0) == 0) {
    auto [fam, n] = parse_family(name.substr(7), name);
    return detail::realize_cartan(detail::affine_cartan(fam, n), name);
  }
  if (name.rfind("folded:", 0) == 0) {
    std::string rest = name.substr(7);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw InvalidInstanceError(name + ": expected folded:<family><rank>:<automorphism>");
    auto [fam, n] = parse_family(rest.substr(0, colon), name);
    std::string autom = rest.substr(colon + 1);
    detail::Cartan a = detail::finite_cartan(fam, n);
    return fold_system(a, detail::automorphism_perm(fam, n, autom), name);
  }
  throw InvalidInstanceError("unknown builtin '" + name + "'");
}

}  // namespace rootcone
