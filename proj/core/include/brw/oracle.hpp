#pragma once

#include <cstdint>
#include <vector>

#include "brw/coding.hpp"
#include "brw/structure.hpp"

namespace brw {

/// Counts the rank patterns of a sorted antichain of k binary words: relative
/// depths of the k leaf levels and k-1 adjacent-meet levels, all distinct,
/// with every leaf strictly deeper than the meets on either side of it. These
/// patterns are exactly the order expansions a k-element chain acquires
/// inside the coded rationals, so this is the expected stable degree.
std::int64_t devlin_oracle(int k);

/// The expansion structures behind devlin_oracle(k): for each valid rank
/// pattern, the k-element chain (universe 0..k-1, increasing) together with
/// the level-comparison relation R the pattern induces. Pairwise distinct.
std::vector<Structure> devlin_oracle_structures(int k);

/// Builds an antichain of binary words realizing a given rank pattern:
/// leaf_rank[i] is the depth rank of the i-th leaf in coded order and
/// meet_rank[i] the rank of the meet of leaves i and i+1. The ranks together
/// must form a permutation of 0..2k-2 satisfying the leaf-above-meet
/// constraints. The returned words have level exactly equal to their rank.
std::vector<TreeNode> realize_rank_pattern(const std::vector<int>& leaf_rank,
                                           const std::vector<int>& meet_rank);

/// Expected stable degree of a finite graph inside the coded random graph:
/// counts pairs (linear order on the vertices, rank pattern) where the rank
/// pattern additionally respects passing consistency: a leaf below the meet
/// of two others must be adjacent to both or neither. `a` must be a graph
/// over the language {E/2} with symmetric edges.
std::int64_t rado_oracle(const Structure& a);
std::vector<Structure> rado_oracle_structures(const Structure& a);

/// Expected stable degree of a labeled chain inside the coded labeled
/// rationals: label positions are free (levels of either residue are dense),
/// so the count equals devlin_oracle(|a|). `a` must be a chain over
/// {</2, P0/1..P(parts-1)/1} with each vertex in exactly one part and its
/// order equal to the universe order.
std::int64_t qn_oracle(const Structure& a, int parts);
std::vector<Structure> qn_oracle_structures(const Structure& a, int parts);

/// Expected stable degree of a tournament inside the coded dense local
/// order: counts (vertex order, two-part labeling) pairs that derive the
/// given arcs — within a part the coded order wins, across parts it
/// reverses — times devlin_oracle(|a|) rank patterns. `a` must be a
/// tournament over {E/2}.
std::int64_t s2_oracle(const Structure& a);
std::vector<Structure> s2_oracle_structures(const Structure& a);

/// Expected degree of a level-graded tree pattern inside the complete
/// level tree: the breadth-first order pulls back to (#roots)! times the
/// product over nodes of (#children)! distinct orders. `a` must be over
/// {T</2, L0/1..} with T< a strict forest order consistent with levels.
std::int64_t ultrametric_oracle(const Structure& a);

}  // namespace brw
