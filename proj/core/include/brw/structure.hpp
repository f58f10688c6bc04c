#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

#include "brw/util.hpp"

namespace brw {

struct Symbol {
  std::string name;
  int arity = 0;
  bool operator==(const Symbol&) const = default;
};

/// A finite relational signature: an ordered list of named relation symbols.
/// Names are unique and every arity is at least 1.
class Language {
 public:
  Language() = default;
  explicit Language(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  int size() const { return static_cast<int>(symbols_.size()); }
  const Symbol& at(int i) const { return symbols_.at(i); }

  /// Index of the symbol with this name, or -1 if absent.
  int index_of(const std::string& name) const;

  /// True when every symbol of `base` (name and arity) occurs in this
  /// language. Order-independent.
  bool extends(const Language& base) const;

  bool operator==(const Language&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

/// A finite relational structure over universe {0, ..., size-1}. Each symbol
/// is interpreted by a sorted, duplicate-free list of tuples. Two structures
/// are equal exactly when language, size, and all interpretations coincide
/// literally (no isomorphism involved).
class Structure {
 public:
  Structure() = default;
  Structure(Language lang, int size);

  const Language& language() const { return lang_; }
  int size() const { return size_; }

  void add(const std::string& symbol, const Tuple& tuple);
  void add(int symbol_index, const Tuple& tuple);

  bool holds(int symbol_index, const Tuple& tuple) const;
  bool holds(const std::string& symbol, const Tuple& tuple) const;

  const std::vector<Tuple>& tuples(int symbol_index) const { return rels_.at(symbol_index); }
  const std::vector<Tuple>& tuples(const std::string& symbol) const;

  /// Drops every interpretation not named in `sub`. `sub` must be a
  /// sub-language of this structure's language.
  Structure reduct(const Language& sub) const;

  /// The pullback B·f: the unique structure on {0, ..., k-1} making the
  /// injective map f (given as its image tuple) an embedding into *this.
  Structure induced(const Tuple& map) const;

  bool operator==(const Structure&) const = default;

  /// Deterministic byte encoding; equal strings iff equal structures.
  std::string encode() const;

  nlohmann::json to_json() const;
  static Structure from_json(const nlohmann::json& j);

 private:
  Language lang_;
  int size_ = 0;
  std::vector<std::vector<Tuple>> rels_;
};

/// Convenience builders used throughout tests and catalogs.
Structure make_chain(int n);                               // {<}: 0 < 1 < ... < n-1
Structure make_edgeless(int n);                            // empty language, n points
Structure make_graph(int n, const std::vector<std::pair<int, int>>& edges);  // {E} symmetric
Structure make_tournament(int n, const std::vector<std::pair<int, int>>& arcs);  // {E} oriented

}  // namespace brw
