#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brw/coding.hpp"
#include "brw/structure.hpp"

namespace brw {

struct DegreeCheckpoint {
  int rounds = 0;        // growth rounds applied when sampled
  int universe = 0;      // leaves at that point
  std::int64_t accumulated = 0;
};

struct DegreeResult {
  std::int64_t degree = 0;  // accumulated distinct expansion patterns
  bool stabilized = false;  // unchanged across the trailing window
  std::vector<DegreeCheckpoint> history;
};

/// Literal expansion structures realized by embeddings of `a` into the base
/// reduct of the coding's current emission: for each embedding f, the
/// pullback of the full emission along f. Deduplicated. Materializes the
/// full emission, so intended for small codings (tests, cross-checks).
std::vector<Structure> enumerate_expansions(const Structure& a, const TreeCoding& coding);

/// Grows the coding through the checkpoint schedule (ascending round
/// counts), accumulating the set of expansion patterns of `a` seen so far.
/// Stops early once the accumulated count has been unchanged across
/// `window` consecutive checkpoint steps. The accumulated set only ever
/// grows, so its size converges to the degree of `a` from below.
DegreeResult stabilized_degree(const Structure& a, TreeCoding coding,
                               const std::vector<int>& checkpoints, int window);

/// Degree of an n-element set inside the bare countable set, computed by
/// enumerating order pullbacks (comes out to n!).
std::int64_t set_degree(int n);

/// Colors every embedding of `a` into the coding's base emission by its
/// expansion pattern. Color ids are assigned in discovery order; `key`
/// holds the canonical pattern key of each class.
struct ExpansionColoring {
  std::vector<Tuple> embeddings;
  std::vector<int> color;
  std::vector<std::string> key;
};
ExpansionColoring expansion_coloring(const Structure& a, const TreeCoding& coding);

/// Ascending round counts first, first*ratio, ... capped at and ending with
/// `last`.
std::vector<int> geometric_checkpoints(int first, int last, double ratio = 1.5);

}  // namespace brw
