#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "brw/coding.hpp"
#include "brw/structure.hpp"

namespace brw {

/// A coloring of a finite set of embeddings (each embedding is its image
/// tuple). Colors are opaque labels, stored as indices into `label`; the
/// label list holds exactly the colors that occur, in first-occurrence order
/// over the domain.
struct Coloring {
  std::vector<Tuple> domain;       // embeddings, fixed enumeration order
  std::vector<int> color;          // color id per embedding
  std::vector<std::string> label;  // display label per color id

  int color_count() const { return static_cast<int>(label.size()); }

  nlohmann::json to_json() const;
  static Coloring from_json(const nlohmann::json& j);
};

/// Builds a coloring; labels are canonicalized to ids by first occurrence.
/// Throws when the label list does not cover the domain exactly.
Coloring make_coloring(std::vector<Tuple> domain, const std::vector<std::string>& labels);

/// The canonical expansion coloring of `a` over the coding's base emission:
/// embeddings are colored by their expansion pattern.
Coloring expansion_coloring_of(const Structure& a, const TreeCoding& coding);

/// True when delta refines gamma: whenever delta(f0) = delta(f1), also
/// gamma(f0) = gamma(f1). Both colorings must cover the same embedding set.
bool refines(const Coloring& gamma, const Coloring& delta);

/// Mutual refinement.
bool equivalent(const Coloring& gamma, const Coloring& delta);

/// The common refinement: classes are the nonempty intersections of gamma's
/// and delta's classes, labeled by first occurrence.
Coloring product(const Coloring& gamma, const Coloring& delta);

/// True when delta_n strongly refines gamma_m along the connectors: for every
/// connector f, the pullback s -> gamma_m(s o f) is refined by delta_n.
/// Throws when some composition s o f lies outside gamma_m's domain.
bool strongly_refines(const Coloring& gamma_m, const Coloring& delta_n,
                      const std::vector<Tuple>& connectors);

/// The cell of the pair gamma_m << delta_n: one row per delta_n-color, one
/// column per connector, entries gamma_m-colors.
struct ColoringDiagramCell {
  std::vector<std::vector<int>> cell;  // [delta color][connector] -> gamma color
};

/// Computes the cell; throws (naming a witnessing s0, s1, f) when the pair
/// fails strong refinement, which is exactly well-definedness.
ColoringDiagramCell coloring_diagram(const Coloring& gamma_m, const Coloring& delta_n,
                                     const std::vector<Tuple>& connectors);

/// True when every copy realizes every color of gamma_m through the
/// connectors; otherwise false with the first failing copy's index.
struct PersistenceResult {
  bool persistent = false;
  std::optional<int> failing_copy;
};
PersistenceResult persistence_check(const Coloring& gamma_m, const std::vector<Tuple>& copies,
                                    const std::vector<Tuple>& connectors);

/// First copy (by enumeration order) through which the pullback of gamma is
/// refined by the pullback of delta, both pulled back along the copy's
/// connector compositions. Returns the copy index, or nullopt at this depth.
std::optional<int> refinement_search(const Coloring& gamma, const Coloring& delta,
                                     const std::vector<Tuple>& copies,
                                     const std::vector<Tuple>& connectors);

/// The induced coloring of B's embeddings from a coloring of A_n's: each
/// f : B -> ambient collects the colors of the full copies extending it
/// (S_f = colors of s with s o i_B = f), embeddings are joined when their
/// color sets meet, and connected components become the colors. Embeddings
/// with empty S_f are excluded and reported.
struct InducedColoring {
  Coloring coloring;
  std::vector<Tuple> excluded;
};
InducedColoring induced_coloring(const Coloring& gamma_big, const Structure& b,
                                 const Structure& ambient, const Tuple& i_b);

}  // namespace brw
