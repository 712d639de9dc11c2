#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rootcone/errors.hpp"
#include "rootcone/numeric.hpp"

namespace rootcone {

/// Exact coordinate tuple.  The tag keeps lattice vectors and covectors
/// apart at compile time; the only bridge between them is pair().
template <class Tag>
class Coords {
 public:
  Coords() = default;
  explicit Coords(std::vector<Rat> entries) : c_(std::move(entries)) {}

  static Coords zero(int rank) {
    if (rank <= 0) throw DomainError("coordinate rank must be positive");
    return Coords(std::vector<Rat>(static_cast<std::size_t>(rank)));
  }

  int size() const { return static_cast<int>(c_.size()); }

  const Rat& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Rat& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  const std::vector<Rat>& entries() const { return c_; }

  bool is_zero() const {
    for (const Rat& q : c_)
      if (sgn(q) != 0) return false;
    return true;
  }

  Coords operator+(const Coords& o) const {
    check_same_rank(o);
    std::vector<Rat> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
    return Coords(std::move(r));
  }

  Coords operator-(const Coords& o) const {
    check_same_rank(o);
    std::vector<Rat> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] - o.c_[i];
    return Coords(std::move(r));
  }

  Coords operator-() const {
    std::vector<Rat> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return Coords(std::move(r));
  }

  friend Coords operator*(const Rat& a, const Coords& v) {
    std::vector<Rat> r(v.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a * v.c_[i];
    return Coords(std::move(r));
  }

  bool operator==(const Coords& o) const { return c_ == o.c_; }
  bool operator!=(const Coords& o) const { return c_ != o.c_; }

 private:
  void check_same_rank(const Coords& o) const {
    if (c_.size() != o.c_.size())
      throw StructuralError("coordinate rank mismatch");
  }

  std::vector<Rat> c_;
};

struct VecTag {};
struct CovecTag {};

/// Point / lattice vector in V.
using Vec = Coords<VecTag>;
/// Linear functional in V*.
using Covec = Coords<CovecTag>;

inline Vec make_vec(std::initializer_list<long> xs) {
  std::vector<Rat> r;
  r.reserve(xs.size());
  for (long x : xs) r.emplace_back(x);
  return Vec(std::move(r));
}

inline Covec make_covec(std::initializer_list<long> xs) {
  std::vector<Rat> r;
  r.reserve(xs.size());
  for (long x : xs) r.emplace_back(x);
  return Covec(std::move(r));
}

/// Natural pairing <ell, x>.  The sole covector/vector bridge.
inline Rat pair(const Covec& ell, const Vec& x) {
  if (ell.size() != x.size()) throw StructuralError("pairing rank mismatch");
  Rat acc;
  for (int i = 0; i < x.size(); ++i) acc += ell[i] * x[i];
  return acc;
}

/// Componentwise lexicographic order; total on each rank.
template <class Tag>
bool lex_less(const Coords<Tag>& a, const Coords<Tag>& b) {
  for (int i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

/// Unique representative of the positive-scaling class: integer entries,
/// gcd 1.  Signs are preserved; (-1,-1) is already canonical.
template <class Tag>
Coords<Tag> canonical_primitive(const Coords<Tag>& v) {
  if (v.is_zero()) throw DomainError("zero vector has no primitive form");
  Int den_lcm = 1;
  for (int i = 0; i < v.size(); ++i) den_lcm = lcm(den_lcm, v[i].get_den());
  Int num_gcd = 0;
  std::vector<Rat> out(static_cast<std::size_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) {
    Int z = v[i].get_num() * (den_lcm / v[i].get_den());
    num_gcd = gcd(num_gcd, z);
    out[static_cast<std::size_t>(i)] = Rat(z);
  }
  for (Rat& q : out) {
    q /= Rat(num_gcd);
    q.canonicalize();
  }
  return Coords<Tag>(std::move(out));
}

/// Exact textual key of the entries as they stand.
template <class Tag>
std::string key_of(const Coords<Tag>& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s;
}

/// Square integer matrix acting on column vectors, row-major storage.
class IntMat {
 public:
  IntMat() : n_(0) {}
  explicit IntMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {
    if (n <= 0) throw DomainError("matrix rank must be positive");
  }

  static IntMat identity(int n) {
    IntMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int size() const { return n_; }

  const Int& at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * n_ + c];
  }
  Int& at(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }

  IntMat operator*(const IntMat& o) const {
    if (n_ != o.n_) throw StructuralError("matrix rank mismatch");
    IntMat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const Int& aik = at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < n_; ++j) r.at(i, j) += aik * o.at(k, j);
      }
    return r;
  }

  bool operator==(const IntMat& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const IntMat& o) const { return !(*this == o); }

  Vec apply(const Vec& x) const {
    if (x.size() != n_) throw StructuralError("matrix/vector rank mismatch");
    std::vector<Rat> r(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      Rat acc;
      for (int j = 0; j < n_; ++j) acc += Rat(at(i, j)) * x[j];
      r[static_cast<std::size_t>(i)] = acc;
    }
    return Vec(std::move(r));
  }

  IntMat transpose() const {
    IntMat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  /// Fraction-free Bareiss elimination; exact integral determinant.
  Int det() const {
    if (n_ == 0) return 1;
    std::vector<std::vector<Int>> m(static_cast<std::size_t>(n_),
                                    std::vector<Int>(static_cast<std::size_t>(n_)));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = at(i, j);
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n_ - 1; ++k) {
      if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
        int p = -1;
        for (int i = k + 1; i < n_; ++i)
          if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
            p = i;
            break;
          }
        if (p < 0) return 0;
        std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(p)]);
        sign = -sign;
      }
      for (int i = k + 1; i < n_; ++i)
        for (int j = k + 1; j < n_; ++j) {
          Int t = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                  m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
          // Exact division: the Bareiss identity guarantees divisibility.
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t / prev;
        }
      prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    Int d = m[static_cast<std::size_t>(n_) - 1][static_cast<std::size_t>(n_) - 1];
    return sign < 0 ? Int(-d) : d;
  }

  /// Exact inverse when it is again integral (det +-1), nullopt otherwise.
  std::optional<IntMat> inverse_unimodular() const;

  std::string key() const {
    std::string s;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i) s += ',';
      s += a_[i].get_str();
    }
    return s;
  }

 private:
  int n_;
  std::vector<Int> a_;
};

inline IntMat make_mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMat m(static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m.size())
      throw StructuralError("matrix rows must be square");
    int j = 0;
    for (long x : row) m.at(i, j++) = x;
    ++i;
  }
  return m;
}

/// Pullback ell o M: evaluates as x -> ell(Mx).
inline Covec pullback(const Covec& ell, const IntMat& m) {
  if (ell.size() != m.size()) throw StructuralError("pullback rank mismatch");
  std::vector<Rat> r(static_cast<std::size_t>(m.size()));
  for (int c = 0; c < m.size(); ++c) {
    Rat acc;
    for (int rr = 0; rr < m.size(); ++rr) acc += ell[rr] * Rat(m.at(rr, c));
    r[static_cast<std::size_t>(c)] = acc;
  }
  return Covec(std::move(r));
}

/// Reduced row echelon form over the rationals.
struct Rref {
  std::vector<std::vector<Rat>> rows;  // nonzero rows, pivot entry 1
  std::vector<int> pivots;             // pivot column per row, ascending
};

inline Rref rref(std::vector<std::vector<Rat>> rows) {
  Rref out;
  if (rows.empty()) return out;
  std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rat inv = 1 / rows[r][c];
    for (std::size_t j = c; j < cols; ++j) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rat f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

inline int rank_of(const std::vector<std::vector<Rat>>& rows) {
  return static_cast<int>(rref(rows).pivots.size());
}

/// Subtracts the unique span-of-rref combination so that every pivot
/// coordinate of v becomes zero; canonical representative mod the span.
inline std::vector<Rat> reduce_mod(const Rref& basis, std::vector<Rat> v) {
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    int p = basis.pivots[i];
    if (sgn(v[static_cast<std::size_t>(p)]) == 0) continue;
    Rat f = v[static_cast<std::size_t>(p)];
    for (std::size_t j = 0; j < v.size(); ++j)
      v[j] -= f * basis.rows[i][j];
  }
  return v;
}

inline std::optional<IntMat> IntMat::inverse_unimodular() const {
  const int n = n_;
  std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n),
                                  std::vector<Rat>(static_cast<std::size_t>(2 * n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rat(at(i, j));
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
  }
  Rref r = rref(std::move(m));
  if (static_cast<int>(r.pivots.size()) != n || r.pivots[static_cast<std::size_t>(n) - 1] != n - 1)
    return std::nullopt;
  IntMat inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rat& q = r.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
      if (q.get_den() != 1) return std::nullopt;
      inv.at(i, j) = q.get_num();
    }
  return inv;
}

}  // namespace rootcone
