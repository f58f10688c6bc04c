#pragma once

#include <array>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace brw {

/// A finite binary operation table; table[x][y] = x*y. The shape (square,
/// entries inside the universe) is validated on construction paths;
/// associativity is the explicit check below, and the semigroup operations
/// require it.
struct SemigroupTable {
  std::vector<std::vector<int>> table;

  int size() const { return static_cast<int>(table.size()); }
  int mul(int x, int y) const { return table[x][y]; }

  nlohmann::json to_json() const;
  static SemigroupTable from_json(const nlohmann::json& j);
};

/// Exhaustive n^3 associativity check; the witness is the first triple
/// (x, y, z) with (x*y)*z != x*(y*z) in lexicographic order.
struct AssociativityResult {
  bool associative = false;
  std::optional<std::array<int, 3>> witness;
};
AssociativityResult check_associativity(const SemigroupTable& s);

/// All x with x*x = x. Every finite semigroup has one; an empty result can
/// only mean the table was not associative, so it throws.
std::vector<int> idempotents(const SemigroupTable& s);

/// The inclusion-minimal right ideals, each sorted, listed in lexicographic
/// order. Every minimal right ideal of a finite semigroup is a principal
/// set xS, so minimizing over those finds them all. Dually for left.
std::vector<std::vector<int>> minimal_right_ideals(const SemigroupTable& s);
std::vector<std::vector<int>> minimal_left_ideals(const SemigroupTable& s);

/// Clause-by-clause verification of the finite semigroup facts: idempotent
/// existence, u*x = x for x in uS with u idempotent, every right ideal
/// containing a minimal one, minimal-right/minimal-left intersections being
/// one-idempotent groups, and cross-ideal idempotent transfer. A failing
/// clause carries a witness string; failures contradict the theory and mean
/// the input was not a semigroup (or the implementation is wrong).
struct SemifactClause {
  std::string name;
  bool pass = false;
  std::string witness;  // empty when the clause passes
};
struct SemifactsReport {
  std::vector<SemifactClause> clauses;
  bool all_pass() const;
};
SemifactsReport verify_semifacts(const SemigroupTable& s);

/// Every associative table on {0, ..., n-1}, by backtracking over entries
/// with incremental associativity pruning. Counts grow fast (1, 8, 113,
/// 3492 for n = 1..4); sizes above 4 are not practical.
std::vector<SemigroupTable> enumerate_semigroups(int n);

/// A uniform draw from the associative tables of the given size, backed by
/// the exhaustive enumeration. Rejection sampling over raw tables would see
/// roughly one hit per 1.2e6 draws at size 4 (3492 / 4^16, measured), so
/// drawing from the enumerated list gives the same distribution at usable
/// speed. The list is built once per size and cached.
SemigroupTable sample_semigroup(int n, std::mt19937& rng);

}  // namespace brw
