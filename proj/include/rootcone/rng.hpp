#pragma once

#include <cstdint>
#include <random>

#include "rootcone/errors.hpp"

namespace rootcone {

/// Deterministic seeded PRNG.  Draws go through next()/below() only, never
/// through std distribution objects, whose output is implementation-defined;
/// reports must replay bit-for-bit from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Draw in [0, bound).  Modulo bias is negligible at the bounds used here
  /// and keeps replay trivial.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("Rng::below needs a positive bound");
    return eng_() % bound;
  }

  /// Inclusive integer range.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace rootcone
