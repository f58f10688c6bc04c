#pragma once

#include <map>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "brw/coloring.hpp"
#include "brw/structure.hpp"

namespace brw {

/// A finite tower of index sets with restriction cells: level n carries
/// labels J_n, each pair m <= n carries a concrete connector list H_m^n of
/// embeddings, and the cell D(m,n) sends (label at n, connector) to a label
/// at m. Level 0 is a single label.
struct Diagram {
  std::vector<std::vector<std::string>> levels;                       // J_0 .. J_{r-1}
  std::map<std::pair<int, int>, std::vector<Tuple>> connectors;       // (m,n) -> H_m^n
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> cells; // (m,n) -> [q][f] -> p

  int level_count() const { return static_cast<int>(levels.size()); }
  int cell(int m, int n, int q, int f) const { return cells.at({m, n})[q][f]; }

  nlohmann::json to_json() const;
  static Diagram from_json(const nlohmann::json& j);
};

/// Everything wrong with a diagram, with indices; empty means valid.
struct DiagramReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

/// Checks the three diagram laws exhaustively: one level-0 label, every
/// column D(m,n)(-, f) onto J_m, and D(m,N)(j, s o f) = D(m,n)(D(n,N)(j,s), f)
/// whenever the composite connector exists. Shape problems (missing or
/// ill-sized connector lists and cells) are reported the same way.
DiagramReport validate(const Diagram& d);

/// Per-level bijections sigma[n] : levels of d1 -> levels of d2 (as index
/// maps) commuting with every cell.
struct DiagramIso {
  std::vector<std::vector<int>> sigma;
};

/// Level-ascending backtracking search for an isomorphism; lower-level
/// cell images prune the candidate bijections. Requires equal level counts
/// and literally equal connector lists.
std::optional<DiagramIso> isomorphic(const Diagram& d1, const Diagram& d2);

/// Realizes a valid diagram over a chain of structures A_0 <= ... <= A_{r-1}
/// (whose embedding sets must be exactly the diagram's connectors): every
/// label q at level n becomes an expansion of A_n, where the new symbol for
/// (m, p) holds on a tuple exactly when the tuple is a connector f with
/// D(m,n)(q, f) = p. Result is indexed [level][label].
std::vector<std::vector<Structure>> expansion_from_diagram(const Diagram& d,
                                                           const std::vector<Structure>& exhaustion);

/// Reads the diagram back off a family of expansions: the cell at (q, f) is
/// the position of the pullback expansion q . f in the level-m list. A
/// pullback missing from its list is an error naming (level, q, f) — that is
/// failure of reasonableness at this scale.
Diagram diagram_of_expansion(const std::vector<std::vector<Structure>>& expansions,
                             const std::vector<Structure>& exhaustion);

/// Builds the diagram of a strongly-refining chain of canonical colorings:
/// levels are the colorings' labels, connectors come from the shapes, cells
/// from the coloring-diagram construction.
Diagram diagram_from_colorings(const std::vector<Structure>& shapes,
                               const std::vector<Coloring>& colorings);

/// A random valid diagram over a chain exhaustion: up to three levels,
/// at most four labels each, level-(1,2) cells filled with per-connector
/// random surjections (all other cells are forced).
Diagram random_diagram(std::mt19937& rng);

/// The chain structures matching a random or coloring-built diagram.
std::vector<Structure> chain_exhaustion(const std::vector<int>& sizes);

/// First (n, q', f) with D(m,n)(q', i_m) = p and D(m,n)(q', f) = q, in
/// lexicographic order, where i_m is the inclusion connector; nullopt when
/// no witness exists up to n_max (which says nothing about deeper levels).
struct JepWitness {
  int n = 0;
  int label = 0;      // q' as an index into levels[n]
  int connector = 0;  // f as an index into connectors[(m,n)]
};
std::optional<JepWitness> jep_check(const Diagram& d, int m, int p, int q, int n_max);

/// First (N, q', s_p, s_q) with D(n,N)(q', s_p) = p and D(n,N)(q', s_q) = q,
/// in lexicographic order. Requires the amalgamation base to agree:
/// D(m,n)(p, f_p) = D(m,n)(q, f_q). Nullopt = none up to N_max.
struct ApWitness {
  int big = 0;  // N
  int label = 0;
  int s_p = 0;
  int s_q = 0;
};
std::optional<ApWitness> ap_check(const Diagram& d, int m, int n, int p, int q, int f_p, int f_q,
                                  int n_max);

}  // namespace brw
