#pragma once

#include <string>
#include <vector>

#include "brw/structure.hpp"

namespace brw {

/// Nodes of the binary tree 2^{<w} are finite words over {0,1}, stored as
/// strings of '0'/'1' characters. The level of a node is its length.
using TreeNode = std::string;

/// Longest common prefix. meet(x, x) = x.
TreeNode meet(const TreeNode& x, const TreeNode& y);

/// True when x and y are comparable in the prefix order (one extends the
/// other, including equality).
bool comparable(const TreeNode& x, const TreeNode& y);

/// The linear order induced on an antichain: x before y iff at the level of
/// their meet, x carries bit 0 and y carries bit 1. Throws when x and y are
/// comparable (the order is only defined on antichains).
bool prec(const TreeNode& x, const TreeNode& y);

/// The level-comparison relation on coded quadruples:
/// R(p, q, r, s) iff |p ^ q| <= |r ^ s|, where ^ is meet and meet(x, x) = x.
/// Requires p, q, r, s to be weakly increasing in the coded linear order
/// (equal or prec for each consecutive pair); throws otherwise.
bool relation_R(const TreeNode& p, const TreeNode& q, const TreeNode& r, const TreeNode& s);

enum class CodingKind { devlin, rado, qn, s2, ultrametric };

enum class Reduct { full, base };

/// A growing coded structure: an antichain of binary words (or, for the
/// ultrametric kind, a complete level-graded tree) together with the recipe
/// for extending it one round at a time and for emitting it as a relational
/// structure. Universes of emitted structures list the leaves in their coded
/// linear order (BFS order for the ultrametric kind).
class TreeCoding {
 public:
  static TreeCoding devlin();
  static TreeCoding rado();
  static TreeCoding qn(int parts);
  static TreeCoding s2();
  static TreeCoding ultrametric(int height, int branch);

  CodingKind kind() const { return kind_; }
  int rounds() const { return round_; }
  int parts() const { return parts_; }
  int height() const { return height_; }
  int branch() const { return branch_; }

  /// Applies `rounds` growth rounds. Each round adds exactly one leaf for
  /// the antichain kinds. Not applicable to the ultrametric kind, which is
  /// built complete.
  void grow(int rounds);

  int leaf_count() const;

  /// Leaves in coded linear order, with levels and (for the labeled kinds)
  /// part labels.
  struct LeafView {
    std::vector<TreeNode> word;
    std::vector<int> level;
    std::vector<int> label;
  };
  LeafView view() const;

  /// Leaves in ascending level order (words only). Antichain kinds only.
  const std::vector<TreeNode>& leaves() const { return leaves_; }

  /// Emits the coded relational structure. Reduct::full carries the
  /// expansion relations (order, level comparison, parts); Reduct::base
  /// drops them down to the plain structure being coded.
  Structure emit(Reduct mode) const;

  /// The language of emit(mode) without building the structure.
  Language emitted_language(Reduct mode) const;

  /// Graphviz rendering of the leaf/meet skeleton.
  std::string dot() const;

  /// True when edge {x, y} is present under the passing-bit rule
  /// E(x, y) iff y(|x|) = 1 for |x| < |y|. Graph kinds (rado) only.
  bool edge(int creation_i, int creation_j) const;

 private:
  TreeCoding() = default;
  void split_min_leaf(int left_gap, int right_gap);
  void grow_split_once();    // devlin / qn / s2, odd rounds
  void grow_scatter_once();  // devlin / qn / s2, even rounds
  void grow_graph_once();    // rado

  CodingKind kind_ = CodingKind::devlin;
  int round_ = 0;
  int parts_ = 1;
  int height_ = 0;
  int branch_ = 0;

  // Antichain kinds.
  std::vector<TreeNode> leaves_;  // ascending by level
  std::vector<int> labels_;       // part label per leaf (qn / s2)
  long created_ = 0;              // total leaves ever created (labels)

  // Graph kind: extension demands not yet realized, and level bookkeeping.
  struct Demand {
    std::vector<int> targets;  // creation indices, sorted by level
    unsigned pattern = 0;      // bit i = required adjacency to targets[i]
  };
  std::vector<Demand> demands_;
  std::size_t demand_head_ = 0;
  std::vector<bool> level_used_;
  int max_level_ = -1;

  // Ultrametric kind.
  std::vector<int> parent_;
  std::vector<int> level_;

  void enqueue_demands_for(int idx);
  bool demand_satisfied(const Demand& d) const;
  void mark_level(int level);
};

/// Convenience builders: grow a fresh coding of the given kind.
TreeCoding grow_devlin(int rounds);
TreeCoding grow_rado(int rounds);
TreeCoding build_qn(int parts, int rounds);
TreeCoding build_s2(int rounds);
TreeCoding build_ultrametric(int height, int branch);

}  // namespace brw
