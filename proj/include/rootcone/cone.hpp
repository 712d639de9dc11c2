#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootcone/errors.hpp"
#include "rootcone/linalg.hpp"
#include "rootcone/numeric.hpp"

namespace rootcone {

enum class Containment { Interior, Boundary, Outside };

namespace detail {

using QVec = std::vector<Rat>;

inline Rat eval(const QVec& h, const QVec& v) {
  Rat acc;
  for (std::size_t i = 0; i < h.size(); ++i) acc += h[i] * v[i];
  return acc;
}

inline bool qvec_zero(const QVec& v) {
  for (const Rat& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

inline bool qvec_less(const QVec& a, const QVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

/// In-place positive scaling to integer entries with gcd 1.
inline void scale_primitive(QVec& v) {
  Int den_lcm = 1;
  for (const Rat& q : v) den_lcm = lcm(den_lcm, q.get_den());
  Int num_gcd = 0;
  for (Rat& q : v) {
    Int z = q.get_num() * (den_lcm / q.get_den());
    num_gcd = gcd(num_gcd, z);
    q = Rat(z);
  }
  for (Rat& q : v) {
    q /= Rat(num_gcd);
    q.canonicalize();
  }
}

/// Constraint-incidence bitset; index k is set when the ray satisfies
/// constraint k with equality.
struct ActiveSet {
  std::vector<std::uint64_t> w;
  explicit ActiveSet(std::size_t nbits) : w((nbits + 63) / 64, 0) {}
  void set(std::size_t k) { w[k >> 6] |= (std::uint64_t{1} << (k & 63)); }
  bool superset_of(const ActiveSet& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if ((o.w[i] & ~w[i]) != 0) return false;
    return true;
  }
  static ActiveSet intersection(const ActiveSet& a, const ActiveSet& b) {
    ActiveSet r(a.w.size() * 64);
    r.w.resize(a.w.size());
    for (std::size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
    return r;
  }
};

struct DDRay {
  QVec v;
  ActiveSet act;
};

struct DDResult {
  std::vector<QVec> lin;   // lineality space basis
  std::vector<DDRay> rays; // extreme rays of the pointed quotient
};

/// Double description: intersects halfspaces {h >= 0} starting from the
/// whole space.  Maintains a minimal generator pair (lineality basis plus
/// extreme rays); adjacency of rays is decided combinatorially from the
/// incidence sets.  Constraints must be nonzero.
inline DDResult dd_cone(int n, const std::vector<QVec>& halfspaces) {
  const std::size_t m = halfspaces.size();
  DDResult st;
  st.lin.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    QVec e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(i)] = 1;
    st.lin.push_back(std::move(e));
  }

  for (std::size_t k = 0; k < m; ++k) {
    const QVec& h = halfspaces[k];

    // Lineality phase: h cuts the lineality space down by one dimension and
    // contributes one new ray on its positive side.
    std::size_t lidx = st.lin.size();
    for (std::size_t i = 0; i < st.lin.size(); ++i)
      if (sgn(eval(h, st.lin[i])) != 0) {
        lidx = i;
        break;
      }
    if (lidx != st.lin.size()) {
      QVec l0 = st.lin[lidx];
      Rat h0 = eval(h, l0);
      if (sgn(h0) < 0) {
        for (Rat& q : l0) q = -q;
        h0 = -h0;
      }
      std::vector<QVec> lin2;
      lin2.reserve(st.lin.size() - 1);
      for (std::size_t i = 0; i < st.lin.size(); ++i) {
        if (i == lidx) continue;
        Rat hv = eval(h, st.lin[i]);
        if (sgn(hv) == 0) {
          lin2.push_back(st.lin[i]);
          continue;
        }
        QVec l2(st.lin[i].size());
        for (std::size_t j = 0; j < l2.size(); ++j)
          l2[j] = h0 * st.lin[i][j] - hv * l0[j];
        scale_primitive(l2);
        lin2.push_back(std::move(l2));
      }
      st.lin = std::move(lin2);
      for (DDRay& r : st.rays) {
        Rat hv = eval(h, r.v);
        if (sgn(hv) != 0) {
          QVec v2(r.v.size());
          for (std::size_t j = 0; j < v2.size(); ++j)
            v2[j] = h0 * r.v[j] - hv * l0[j];
          scale_primitive(v2);
          r.v = std::move(v2);
        }
        r.act.set(k);
      }
      DDRay nr{std::move(l0), ActiveSet(m)};
      // Every processed constraint vanished on the old lineality space.
      for (std::size_t i = 0; i < k; ++i) nr.act.set(i);
      scale_primitive(nr.v);
      st.rays.push_back(std::move(nr));
      continue;
    }

    // Sign-split phase on the pointed part.
    std::vector<Rat> val(st.rays.size());
    bool any_neg = false;
    for (std::size_t i = 0; i < st.rays.size(); ++i) {
      val[i] = eval(h, st.rays[i].v);
      if (sgn(val[i]) < 0) any_neg = true;
      if (sgn(val[i]) == 0) st.rays[i].act.set(k);
    }
    if (!any_neg) continue;

    std::vector<DDRay> next;
    next.reserve(st.rays.size());
    for (std::size_t p = 0; p < st.rays.size(); ++p) {
      if (sgn(val[p]) <= 0) continue;
      for (std::size_t q = 0; q < st.rays.size(); ++q) {
        if (sgn(val[q]) >= 0) continue;
        ActiveSet z = ActiveSet::intersection(st.rays[p].act, st.rays[q].act);
        bool adjacent = true;
        for (std::size_t r = 0; r < st.rays.size(); ++r) {
          if (r == p || r == q) continue;
          if (st.rays[r].act.superset_of(z)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        QVec v2(st.rays[p].v.size());
        for (std::size_t j = 0; j < v2.size(); ++j)
          v2[j] = val[p] * st.rays[q].v[j] - val[q] * st.rays[p].v[j];
        scale_primitive(v2);
        z.set(k);
        next.push_back(DDRay{std::move(v2), std::move(z)});
      }
    }
    for (std::size_t i = 0; i < st.rays.size(); ++i)
      if (sgn(val[i]) >= 0) next.push_back(std::move(st.rays[i]));
    st.rays = std::move(next);
  }
  return st;
}

/// Canonical V-data of a cone given any double-description output:
/// primitive RREF lineality rows, extreme rays reduced mod the lineality
/// span, both primitive, rays sorted lexicographically.
struct CanonV {
  std::vector<QVec> lin;
  std::vector<QVec> extremes;
  int dim = 0;
};

inline CanonV canonicalize(int n, const DDResult& dd) {
  CanonV out;
  std::vector<QVec> rows = dd.lin;
  Rref rr = rref(std::move(rows));
  out.lin.reserve(rr.rows.size());
  for (const auto& row : rr.rows) {
    QVec r = row;
    scale_primitive(r);
    out.lin.push_back(std::move(r));
  }
  out.extremes.reserve(dd.rays.size());
  for (const DDRay& ray : dd.rays) {
    QVec r = reduce_mod(rr, ray.v);
    if (qvec_zero(r))
      throw StructuralError("extreme ray collapsed into the lineality space");
    scale_primitive(r);
    out.extremes.push_back(std::move(r));
  }
  std::sort(out.extremes.begin(), out.extremes.end(), qvec_less);
  std::vector<QVec> all = out.lin;
  all.insert(all.end(), out.extremes.begin(), out.extremes.end());
  out.dim = all.empty() ? 0 : rank_of(all);
  (void)n;
  return out;
}

/// Re-canonicalizes explicit V-data, used when transporting a cone through
/// a lattice automorphism.
inline CanonV canonicalize_raw(int n, const std::vector<QVec>& lin,
                               const std::vector<QVec>& rays) {
  DDResult dd;
  dd.lin = lin;
  dd.rays.reserve(rays.size());
  for (const QVec& v : rays) dd.rays.push_back(DDRay{v, ActiveSet(0)});
  return canonicalize(n, dd);
}

}  // namespace detail

/// Rational polyhedral cone, identified with its point set.  Both the ray
/// and facet descriptions are brought to a canonical form, so equality is
/// list comparison.  Lower-dimensional cones carry +-pairs: the lineality
/// basis appears with both signs in rays(), the span's cutting functionals
/// with both signs in facets().
class Cone {
 public:
  Cone() = default;

  static Cone from_rays(int ambient, const std::vector<Vec>& rays) {
    Cone c = make_base(ambient, true);
    c.in_rays_ = normalize_inputs(ambient, rays, "ray");
    return c;
  }

  static Cone from_facets(int ambient, const std::vector<Covec>& facets) {
    Cone c = make_base(ambient, false);
    c.in_facets_ = normalize_inputs(ambient, facets, "facet");
    return c;
  }

  static Cone full_space(int ambient) { return from_facets(ambient, {}); }
  static Cone origin_only(int ambient) { return from_rays(ambient, {}); }

  int ambient_rank() const { return n_; }
  bool valid() const { return n_ > 0; }

  bool is_completed() const {
    return valid() && cache_->v.has_value() && cache_->h.has_value();
  }

  /// Forces both canonical representations and returns the same cone.
  const Cone& completed() const {
    vdata();
    hdata();
    return *this;
  }

  /// Canonical generator list: lineality basis with both signs, then the
  /// reduced extreme rays, sorted as one list.
  const std::vector<Vec>& rays() const { return vdata().flat; }
  const std::vector<Vec>& lineality_basis() const { return vdata().lin; }
  const std::vector<Vec>& pointed_rays() const { return vdata().pointed; }
  int dimension() const { return vdata().dim; }
  int lineality_dim() const { return static_cast<int>(vdata().lin.size()); }

  /// Canonical irredundant facet list; +-pairs cut out the span when the
  /// cone is not full-dimensional.
  const std::vector<Covec>& facets() const { return hdata().flat; }

  Containment contains(const Vec& x) const {
    require_valid();
    if (x.size() != n_) throw StructuralError("point rank mismatch");
    const std::vector<Covec>& hs = !rays_given_ ? in_facets_ : hdata().flat;
    bool boundary = false;
    for (const Covec& f : hs) {
      int s = sgn(pair(f, x));
      if (s < 0) return Containment::Outside;
      if (s == 0) boundary = true;
    }
    return boundary ? Containment::Boundary : Containment::Interior;
  }

  /// A point with every facet pairing strictly positive.
  Vec interior_point() const {
    require_valid();
    if (dimension() != n_)
      throw DomainError("cone is not full-dimensional, interior is empty");
    return relative_interior_point();
  }

  /// A point interior to the cone within its own span; the sum of the
  /// pointed rays works whenever there are any.
  Vec relative_interior_point() const {
    require_valid();
    const auto& pt = pointed_rays();
    if (!pt.empty()) {
      Vec s = Vec::zero(n_);
      for (const Vec& r : pt) s = s + r;
      return canonical_primitive(s);
    }
    const auto& lb = lineality_basis();
    if (!lb.empty()) return lb.front();
    return Vec::zero(n_);  // the origin cone
  }

  Cone dual() const {
    completed();
    Cone d = make_base(n_, rays_given_);
    d.cache_->v = flip<VData>(*cache_->h);
    d.cache_->h = flip<HData>(*cache_->v);
    d.in_rays_ = d.cache_->v->flat;
    d.rays_given_ = true;
    return d;
  }

  /// Image under a lattice automorphism with known inverse.  Both canonical
  /// representations transport directly; no double-description run needed.
  Cone transformed(const IntMat& m, const IntMat& m_inv) const {
    require_valid();
    if (m.size() != n_ || m_inv.size() != n_)
      throw StructuralError("transform rank mismatch");
    completed();
    std::vector<detail::QVec> lin, rays;
    for (const Vec& v : cache_->v->lin) lin.push_back(m.apply(v).entries());
    for (const Vec& v : cache_->v->pointed) rays.push_back(m.apply(v).entries());
    detail::CanonV cv = detail::canonicalize_raw(n_, lin, rays);
    std::vector<detail::QVec> dlin, drays;
    for (const Covec& f : cache_->h->lin) dlin.push_back(pullback(f, m_inv).entries());
    for (const Covec& f : cache_->h->pointed)
      drays.push_back(pullback(f, m_inv).entries());
    detail::CanonV ch = detail::canonicalize_raw(n_, dlin, drays);

    Cone out = make_base(n_, true);
    out.cache_->v = build_stage<VData>(n_, cv);
    out.cache_->h = build_stage<HData>(n_, ch);
    out.in_rays_ = out.cache_->v->flat;
    return out;
  }

  bool operator==(const Cone& o) const {
    require_valid();
    o.require_valid();
    return n_ == o.n_ && rays() == o.rays();
  }
  bool operator!=(const Cone& o) const { return !(*this == o); }

 private:
  struct VData {
    using Entry = Vec;
    std::vector<Vec> lin;
    std::vector<Vec> pointed;
    std::vector<Vec> flat;
    int dim = 0;
  };
  struct HData {
    using Entry = Covec;
    std::vector<Covec> lin;
    std::vector<Covec> pointed;
    std::vector<Covec> flat;
    int dim = 0;
  };
  struct Cache {
    std::optional<VData> v;
    std::optional<HData> h;
  };

  static Cone make_base(int ambient, bool rays_given) {
    if (ambient <= 0) throw DomainError("ambient rank must be positive");
    Cone c;
    c.n_ = ambient;
    c.rays_given_ = rays_given;
    c.cache_ = std::make_shared<Cache>();
    return c;
  }

  template <class C>
  static std::vector<C> normalize_inputs(int ambient, const std::vector<C>& in,
                                         const char* what) {
    std::vector<C> out;
    out.reserve(in.size());
    for (const C& v : in) {
      if (v.size() != ambient)
        throw StructuralError(std::string(what) + " rank mismatch");
      if (v.is_zero())
        throw DomainError(std::string("zero ") + what + " is not allowed");
      C p = canonical_primitive(v);
      if (std::find(out.begin(), out.end(), p) == out.end())
        out.push_back(std::move(p));
    }
    return out;
  }

  template <class Stage>
  static Stage build_stage(int n, const detail::CanonV& cv) {
    using E = typename Stage::Entry;
    Stage s;
    s.dim = cv.dim;
    for (const auto& r : cv.lin) s.lin.push_back(E(r));
    for (const auto& r : cv.extremes) s.pointed.push_back(E(r));
    std::vector<detail::QVec> flat;
    for (const auto& r : cv.lin) {
      flat.push_back(r);
      detail::QVec neg(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
      flat.push_back(std::move(neg));
    }
    for (const auto& r : cv.extremes) flat.push_back(r);
    std::sort(flat.begin(), flat.end(), detail::qvec_less);
    for (auto& r : flat) s.flat.push_back(E(std::move(r)));
    (void)n;
    return s;
  }

  /// Rebuilds a stage of the dual cone from the primal's opposite stage.
  template <class To, class From>
  static To flip(const From& src) {
    using E = typename To::Entry;
    To t;
    t.dim = 0;
    auto conv = [](const auto& list) {
      std::vector<E> out;
      out.reserve(list.size());
      for (const auto& v : list) out.push_back(E(v.entries()));
      return out;
    };
    t.lin = conv(src.lin);
    t.pointed = conv(src.pointed);
    t.flat = conv(src.flat);
    std::vector<detail::QVec> all;
    for (const auto& v : t.lin) all.push_back(v.entries());
    for (const auto& v : t.pointed) all.push_back(v.entries());
    t.dim = all.empty() ? 0 : rank_of(all);
    return t;
  }

  void require_valid() const {
    if (!valid()) throw StructuralError("cone is default-constructed");
  }

  const VData& vdata() const {
    require_valid();
    if (cache_->v) return *cache_->v;
    if (!rays_given_) {
      std::vector<detail::QVec> hs;
      hs.reserve(in_facets_.size());
      for (const Covec& f : in_facets_) hs.push_back(f.entries());
      cache_->v = build_stage<VData>(n_, detail::canonicalize(n_, detail::dd_cone(n_, hs)));
    } else {
      // Prune input redundancy through the facet description first.
      const HData& h = hdata();
      std::vector<detail::QVec> hs;
      hs.reserve(h.flat.size());
      for (const Covec& f : h.flat) hs.push_back(f.entries());
      cache_->v = build_stage<VData>(n_, detail::canonicalize(n_, detail::dd_cone(n_, hs)));
    }
    return *cache_->v;
  }

  const HData& hdata() const {
    require_valid();
    if (cache_->h) return *cache_->h;
    std::vector<detail::QVec> gens;
    if (rays_given_) {
      gens.reserve(in_rays_.size());
      for (const Vec& r : in_rays_) gens.push_back(r.entries());
    } else {
      const VData& v = vdata();
      gens.reserve(v.flat.size());
      for (const Vec& r : v.flat) gens.push_back(r.entries());
    }
    cache_->h = build_stage<HData>(n_, detail::canonicalize(n_, detail::dd_cone(n_, gens)));
    return *cache_->h;
  }

  int n_ = 0;
  bool rays_given_ = false;
  std::vector<Vec> in_rays_;
  std::vector<Covec> in_facets_;
  std::shared_ptr<Cache> cache_;
};

inline Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw StructuralError("intersect: ambient rank mismatch");
  std::vector<Covec> hs = a.facets();
  const std::vector<Covec>& hb = b.facets();
  hs.insert(hs.end(), hb.begin(), hb.end());
  return Cone::from_facets(a.ambient_rank(), hs);
}

/// Whether two full-dimensional cones share an interior point.
inline bool interiors_overlap(const Cone& a, const Cone& b) {
  const int n = a.ambient_rank();
  if (n != b.ambient_rank())
    throw StructuralError("interiors_overlap: ambient rank mismatch");
  if (a.dimension() != n || b.dimension() != n)
    throw DomainError("interiors_overlap needs full-dimensional cones");
  return intersect(a, b).dimension() == n;
}

}  // namespace rootcone
