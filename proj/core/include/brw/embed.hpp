#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "brw/structure.hpp"

namespace brw {

/// An embedding A -> B is an injective map on universes such that for every
/// relation symbol and every tuple over A's universe, the relation holds in A
/// exactly when its image holds in B. Embeddings are represented by their
/// image tuple: map[i] is the image of i.
bool is_embedding(const Structure& a, const Structure& b, const Tuple& map);

/// Visits every embedding A -> B in lexicographic order of the image tuple.
/// The visitor returns false to stop early. Returns false if stopped.
bool for_each_embedding(const Structure& a, const Structure& b,
                        const std::function<bool(const Tuple&)>& visit);

/// All embeddings A -> B, lexicographically ordered by image tuple.
std::vector<Tuple> enumerate_embeddings(const Structure& a, const Structure& b);

/// (outer ∘ inner)(i) = outer[inner[i]].
Tuple compose(const Tuple& outer, const Tuple& inner);

/// First isomorphism A -> B in lexicographic order, if any.
std::optional<Tuple> find_isomorphism(const Structure& a, const Structure& b);

/// All automorphisms of A (= all embeddings A -> A, which are bijective on a
/// finite universe), lexicographically ordered.
std::vector<Tuple> automorphisms(const Structure& a);

/// A 2-type over (A, ambient): the equivalence class of an ordered pair
/// (f0, f1) of embeddings A -> ambient, where two pairs are equivalent when
/// an isomorphism of the induced joint configurations carries one pair of
/// maps to the other. The class is stored as its joint configuration with
/// the two maps recorded by marker relations, so equivalence is isomorphism
/// of decorated structures.
struct TwoType {
  Structure decorated;
};

struct TwoTypeSummary {
  std::vector<TwoType> types;   // first-occurrence representatives
  std::vector<long> counts;     // pairs realizing each type
  long pairs = 0;               // total ordered pairs examined
};

/// Enumerates the 2-types of A realized in `ambient` over all ordered pairs
/// of embeddings. If A does not embed, the result is empty.
TwoTypeSummary enumerate_2types(const Structure& a, const Structure& ambient);

/// The 2-type of one concrete ordered pair of embeddings.
TwoType pair_2type(const Structure& a, const Structure& ambient, const Tuple& f0, const Tuple& f1);

bool same_2type(const TwoType& s, const TwoType& t);

/// Least index n <= n_max such that every 2-type of A realized in
/// exhaustion[n_max] is already realized in exhaustion[n]. The exhaustion
/// must be an inclusion chain: each structure is the induced substructure of
/// the next on an initial segment of its universe. Returns nullopt when A
/// does not embed into exhaustion[n_max] (vacuous search space).
std::optional<int> roelcke_witness(const Structure& a,
                                   const std::vector<Structure>& exhaustion,
                                   int n_max);

}  // namespace brw
