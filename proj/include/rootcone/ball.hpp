#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rootcone/errors.hpp"
#include "rootcone/linalg.hpp"

namespace rootcone {

/// Group element reached by a word in the generators.  word[0] acts first,
/// so matrix = M_{word.back()} * ... * M_{word.front()}.  The stored word is
/// the length-lexicographically first one reaching the matrix.
struct WordElement {
  std::vector<int> word;
  IntMat mat;
  IntMat inv;
};

struct BallResult {
  std::vector<WordElement> elements;       // BFS order, identity first
  std::vector<std::size_t> new_per_level;  // levels 1..depth, zero-padded
  bool closed = false;                     // some level added nothing
  int depth = 0;
};

/// Breadth-first enumeration of the ball of the given word length.  Group
/// elements are identified by their matrices; equality of matrices is
/// equality in the group.  Throws LimitError past `limit` stored elements.
inline BallResult enumerate_ball(int n, const std::vector<IntMat>& gens,
                                 const std::vector<IntMat>& invs, int depth,
                                 std::size_t limit = 1000000) {
  if (gens.size() != invs.size())
    throw StructuralError("generator/inverse count mismatch");
  if (depth < 0) throw DomainError("negative depth");
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (!(gens[j] * invs[j] == IntMat::identity(n)))
      throw StructuralError("generator inverse is wrong");

  BallResult out;
  out.depth = depth;
  std::unordered_map<std::string, std::size_t> seen;
  out.elements.push_back(WordElement{{}, IntMat::identity(n), IntMat::identity(n)});
  seen.emplace(out.elements[0].mat.key(), 0);

  std::vector<std::size_t> frontier = {0};
  for (int level = 1; level <= depth; ++level) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      // Copy: elements may reallocate while we append.
      const std::vector<int> word = out.elements[idx].word;
      for (std::size_t j = 0; j < gens.size(); ++j) {
        IntMat m = gens[j] * out.elements[idx].mat;
        std::string k = m.key();
        if (seen.find(k) != seen.end()) continue;
        if (out.elements.size() >= limit)
          throw LimitError("group ball exceeded the element budget");
        WordElement we;
        we.word = word;
        we.word.push_back(static_cast<int>(j));
        we.inv = out.elements[idx].inv * invs[j];
        we.mat = std::move(m);
        seen.emplace(std::move(k), out.elements.size());
        next.push_back(out.elements.size());
        out.elements.push_back(std::move(we));
      }
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

}  // namespace rootcone
