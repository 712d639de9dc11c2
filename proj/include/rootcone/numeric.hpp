#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "rootcone/errors.hpp"

namespace rootcone {

/// Arbitrary-precision integer.  Lattice data, matrix entries and word
/// lengths all live here; machine integers appear only as indices.
using Int = mpz_class;

/// Arbitrary-precision rational, always kept canonical (gcd 1, positive
/// denominator).  All geometric computation is exact.
using Rat = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw ParseError("bad rational literal: '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Canonical decimal form, "p" or "p/q".
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline std::string int_to_string(const Int& z) { return z.get_str(); }

/// FNV-1a, used to digest canonical serializations.  Stability across
/// platforms matters more than collision resistance here.
struct Fnv1a {
  std::uint64_t state = 14695981039346656037ull;
  void feed(const std::string& s) {
    for (unsigned char c : s) {
      state ^= c;
      state *= 1099511628211ull;
    }
  }
  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t v = state;
    for (int i = 15; i >= 0; --i) {
      out[static_cast<std::size_t>(i)] = digits[v & 0xf];
      v >>= 4;
    }
    return out;
  }
};

}  // namespace rootcone
