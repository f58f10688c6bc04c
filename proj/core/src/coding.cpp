#include "brw/coding.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "brw/util.hpp"

namespace brw {

TreeNode meet(const TreeNode& x, const TreeNode& y) {
  std::size_t n = std::min(x.size(), y.size());
  std::size_t i = 0;
  while (i < n && x[i] == y[i]) ++i;
  return x.substr(0, i);
}

bool comparable(const TreeNode& x, const TreeNode& y) {
  const TreeNode& shorter = x.size() <= y.size() ? x : y;
  const TreeNode& longer = x.size() <= y.size() ? y : x;
  return longer.compare(0, shorter.size(), shorter) == 0;
}

bool prec(const TreeNode& x, const TreeNode& y) {
  if (comparable(x, y))
    throw std::invalid_argument("prec: nodes are comparable in the tree order");
  std::size_t m = meet(x, y).size();
  return x[m] == '0' && y[m] == '1';
}

namespace {

// Weakly increasing in the coded order: equal or prec.
bool weakly_before(const TreeNode& a, const TreeNode& b) {
  if (a == b) return true;
  if (comparable(a, b)) return false;
  return prec(a, b);
}

std::size_t meet_level(const TreeNode& a, const TreeNode& b) {
  return a == b ? a.size() : meet(a, b).size();
}

}  // namespace

bool relation_R(const TreeNode& p, const TreeNode& q, const TreeNode& r, const TreeNode& s) {
  if (!weakly_before(p, q) || !weakly_before(r, s))
    throw std::invalid_argument("relation_R: each compared pair must be weakly increasing");
  return meet_level(p, q) <= meet_level(r, s);
}

TreeCoding TreeCoding::devlin() {
  TreeCoding c;
  c.kind_ = CodingKind::devlin;
  c.parts_ = 1;
  c.leaves_.push_back("");
  c.labels_.push_back(0);
  c.created_ = 1;
  c.mark_level(0);
  return c;
}

TreeCoding TreeCoding::qn(int parts) {
  if (parts < 1) throw std::invalid_argument("qn: parts must be >= 1");
  TreeCoding c = devlin();
  c.kind_ = CodingKind::qn;
  c.parts_ = parts;
  return c;
}

TreeCoding TreeCoding::s2() {
  TreeCoding c = devlin();
  c.kind_ = CodingKind::s2;
  c.parts_ = 2;
  return c;
}

TreeCoding TreeCoding::rado() {
  TreeCoding c;
  c.kind_ = CodingKind::rado;
  return c;
}

TreeCoding TreeCoding::ultrametric(int height, int branch) {
  if (height < 0) throw std::invalid_argument("ultrametric: height must be >= 0");
  if (branch < 1 || branch > 10)
    throw std::invalid_argument("ultrametric: branch must be in [1, 10]");
  TreeCoding c;
  c.kind_ = CodingKind::ultrametric;
  c.height_ = height;
  c.branch_ = branch;
  c.parent_.push_back(-1);
  c.level_.push_back(0);
  std::size_t head = 0;
  while (head < c.parent_.size()) {
    int lvl = c.level_[head];
    if (lvl < height) {
      for (int b = 0; b < branch; ++b) {
        c.parent_.push_back(static_cast<int>(head));
        c.level_.push_back(lvl + 1);
      }
    }
    ++head;
  }
  return c;
}

int TreeCoding::leaf_count() const {
  if (kind_ == CodingKind::ultrametric) return static_cast<int>(parent_.size());
  return static_cast<int>(leaves_.size());
}

void TreeCoding::grow(int rounds) {
  if (kind_ == CodingKind::ultrametric)
    throw std::logic_error("grow: the ultrametric coding is built complete");
  for (int i = 0; i < rounds; ++i) {
    if (kind_ == CodingKind::rado)
      grow_graph_once();
    else if (round_ % 2 == 0)
      grow_split_once();
    else
      grow_scatter_once();
    ++round_;
  }
}

// Splits the lowest-level leaf. Its left child extends it by 0 and is padded
// with 0s to level M + left_gap, its right child extends it by 1 and is
// padded with 0s to level M + right_gap, where M is the current maximum
// level. The fork between the children sits at the split leaf's old level.
void TreeCoding::split_min_leaf(int left_gap, int right_gap) {
  TreeNode u = leaves_.front();
  leaves_.erase(leaves_.begin());
  labels_.erase(labels_.begin());
  std::size_t maxlevel = leaves_.empty() ? u.size() : leaves_.back().size();
  TreeNode left = u + '0';
  left.resize(maxlevel + left_gap, '0');
  TreeNode right = u + '1';
  right.resize(maxlevel + right_gap, '0');
  leaves_.push_back(left);
  labels_.push_back(static_cast<int>(created_++ % parts_));
  leaves_.push_back(right);
  labels_.push_back(static_cast<int>(created_++ % parts_));
  mark_level(static_cast<int>(left.size()));
  mark_level(static_cast<int>(right.size()));
}

void TreeCoding::grow_split_once() { split_min_leaf(1, 2); }

// Under the splitting rule alone every fork is created at what was then the
// minimal leaf level, so all meet levels stay below all current leaf levels
// forever and level-comparison patterns that interleave meets among leaves
// are never realized. Alternate rounds therefore insert one leaf that
// departs from an existing path at a pseudorandomly chosen unused level and
// ends at a pseudorandomly chosen unused level, so that fork and leaf levels
// mix across the whole range. When no unused departure level exists yet, the
// round falls back to a split that leaves gaps for later departures.
void TreeCoding::grow_scatter_once() {
  int maxleaf = static_cast<int>(leaves_.back().size());
  std::vector<int> departures;
  for (int d = 1; d < maxleaf; ++d)
    if (d >= static_cast<int>(level_used_.size()) || !level_used_[d]) departures.push_back(d);
  if (departures.empty()) {
    split_min_leaf(2, 4);
    return;
  }
  std::string salt = std::to_string(round_);
  int d = departures[fnv64("scatter-d:" + salt) % departures.size()];

  // Any leaf deeper than d can anchor the departure; leaves_ is sorted by
  // level, so the candidates form a suffix.
  std::size_t first = 0;
  while (static_cast<int>(leaves_[first].size()) <= d) ++first;
  std::size_t anchor = first + fnv64("scatter-a:" + salt) % (leaves_.size() - first);
  const TreeNode& y = leaves_[anchor];

  // The new leaf level: any unused level above the departure. Staying above
  // the current minimum keeps the splitting queue's order intact.
  int minleaf = static_cast<int>(leaves_.front().size());
  std::vector<int> levels;
  for (int l = std::max(d, minleaf) + 1; l <= max_level_ + 8; ++l)
    if (l >= static_cast<int>(level_used_.size()) || !level_used_[l]) levels.push_back(l);
  int level = levels[fnv64("scatter-l:" + salt) % levels.size()];

  TreeNode z = y.substr(0, d);
  z += (y[d] == '0') ? '1' : '0';
  z.resize(level, '0');
  for (int p = d + 1; p < level; ++p)
    if (fnv64("scatter-b:" + salt + ":" + std::to_string(p)) & 1u) z[p] = '1';
  mark_level(d);
  mark_level(level);

  auto pos = std::lower_bound(leaves_.begin(), leaves_.end(), z,
                              [](const TreeNode& a, const TreeNode& b) { return a.size() < b.size(); });
  labels_.insert(labels_.begin() + (pos - leaves_.begin()),
                 static_cast<int>(created_++ % parts_));
  leaves_.insert(pos, z);
}

// ---------------------------------------------------------------------------
// Graph coding growth. Leaves form an antichain whose leaf levels and meet
// levels are pairwise distinct; the edge relation is read off passing bits:
// E(x, y) iff y(|x|) = 1 for |x| < |y|. Each round inserts one leaf. A queue
// of adjacency demands (target leaves plus a required adjacency pattern)
// drives the insertions so that every finite adjacency pattern over early
// leaves is realized within a bounded number of later rounds; demands already
// realized by an existing leaf are simply dropped.
// ---------------------------------------------------------------------------

namespace {
constexpr int kDemandCap = 32;      // leaves beyond this index generate no demands
constexpr int kRotateCap = 64;      // unrealizable demands re-queued per round
constexpr int kMaxDemandArity = 3;  // adjacency patterns over at most 3 targets
// Early leaves are spaced far apart so the levels between them provide room
// for the departures that realize adjacency patterns over them; later leaves
// only need fresh levels. A new leaf inherits its bits below the departure
// point from its anchor, so combinations over low levels can only be created
// while unused levels below remain, and the wide spacing keeps that budget
// from running out.
constexpr int kEarlyGap = 32;
constexpr int kLateGap = 3;
}  // namespace

void TreeCoding::mark_level(int level) {
  if (level >= static_cast<int>(level_used_.size())) level_used_.resize(level + 1, false);
  level_used_[level] = true;
  max_level_ = std::max(max_level_, level);
}

void TreeCoding::enqueue_demands_for(int idx) {
  if (idx >= kDemandCap) return;
  auto add = [&](std::vector<int> targets) {
    // Sort by level ascending; with this construction creation order is
    // level order, so index order suffices.
    std::sort(targets.begin(), targets.end());
    unsigned npat = 1u << targets.size();
    for (unsigned p = 0; p < npat; ++p) demands_.push_back(Demand{targets, p});
  };
  add({idx});
  for (int i = 0; i < idx; ++i) add({i, idx});
  if (kMaxDemandArity >= 3)
    for (int i = 0; i < idx; ++i)
      for (int j = i + 1; j < idx; ++j) add({i, j, idx});
}

bool TreeCoding::edge(int creation_i, int creation_j) const {
  const TreeNode& x = leaves_[creation_i];
  const TreeNode& y = leaves_[creation_j];
  const TreeNode& shorter = x.size() < y.size() ? x : y;
  const TreeNode& longer = x.size() < y.size() ? y : x;
  return longer[shorter.size()] == '1';
}

bool TreeCoding::demand_satisfied(const Demand& d) const {
  int n = static_cast<int>(leaves_.size());
  for (int z = n - 1; z >= 0; --z) {
    if (std::find(d.targets.begin(), d.targets.end(), z) != d.targets.end()) continue;
    bool ok = true;
    for (std::size_t i = 0; i < d.targets.size(); ++i) {
      bool want = (d.pattern >> i) & 1u;
      if (edge(d.targets[i], z) != want) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

void TreeCoding::grow_graph_once() {
  if (leaves_.empty()) {
    leaves_.push_back("00");
    labels_.push_back(0);
    ++created_;
    mark_level(2);
    enqueue_demands_for(0);
    return;
  }

  auto level_unused = [&](int l) {
    return l >= 0 && (l >= static_cast<int>(level_used_.size()) || !level_used_[l]);
  };

  // Inserts one leaf that departs from anchor y at an unused level d (< |y|),
  // creating exactly one fresh meet node. Bits below d are inherited from the
  // anchor; bits above d at existing leaf levels are forced where demanded and
  // otherwise pseudorandom; everything else pads with 0.
  auto insert_leaf = [&](int anchor, int d, const std::vector<std::pair<int, bool>>& forced) {
    const TreeNode& y = leaves_[anchor];
    int level = max_level_ + (created_ <= kDemandCap ? kEarlyGap : kLateGap);
    TreeNode z = y.substr(0, d);
    z += (y[d] == '0') ? '1' : '0';
    z.resize(level, '0');
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      int l = static_cast<int>(leaves_[i].size());
      if (l <= d) continue;
      z[l] = (fnv64(std::to_string(round_) + ":" + std::to_string(i)) & 1u) ? '1' : '0';
    }
    for (const auto& [t, want] : forced) z[leaves_[t].size()] = want ? '1' : '0';
    mark_level(d);
    mark_level(level);
    leaves_.push_back(z);
    labels_.push_back(0);
    ++created_;
    enqueue_demands_for(static_cast<int>(leaves_.size()) - 1);
  };

  // Attempts to realize a demand. Targets are split at a cut: bits at the
  // deeper targets' levels are set directly on the new leaf (above the
  // departure), bits at the shallower ones are inherited from an anchor that
  // already carries them.
  auto try_realize = [&](const Demand& dem) {
    int n = static_cast<int>(leaves_.size());
    int t = static_cast<int>(dem.targets.size());
    for (int cut = t - 1; cut >= 0; --cut) {
      int lo = cut == 0 ? 0 : static_cast<int>(leaves_[dem.targets[cut - 1]].size()) + 1;
      int hi = static_cast<int>(leaves_[dem.targets[cut]].size()) - 1;
      for (int d = hi; d >= lo; --d) {
        if (!level_unused(d)) continue;
        for (int y = n - 1; y >= 0; --y) {
          if (static_cast<int>(leaves_[y].size()) <= d) continue;
          bool ok = true;
          for (int i = 0; i < cut; ++i) {
            bool want = (dem.pattern >> i) & 1u;
            if ((leaves_[y][leaves_[dem.targets[i]].size()] == '1') != want) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          std::vector<std::pair<int, bool>> forced;
          for (int i = cut; i < t; ++i)
            forced.emplace_back(dem.targets[i], ((dem.pattern >> i) & 1u) != 0);
          insert_leaf(y, d, forced);
          return true;
        }
      }
    }
    return false;
  };

  int rotated = 0;
  while (demand_head_ < demands_.size() && rotated < kRotateCap) {
    Demand dem = demands_[demand_head_];
    ++demand_head_;
    if (demand_satisfied(dem)) continue;
    if (try_realize(dem)) return;
    demands_.push_back(dem);
    ++rotated;
  }

  // No pending demand needs a leaf: extend with a pseudorandomly-typed leaf,
  // departing from the deepest anchor at the deepest unused level.
  int anchor = static_cast<int>(leaves_.size()) - 1;
  for (int d = static_cast<int>(leaves_[anchor].size()) - 1; d >= 0; --d) {
    if (level_unused(d)) {
      insert_leaf(anchor, d, {});
      return;
    }
  }
  throw std::logic_error("graph coding: no departure level available");
}

// ---------------------------------------------------------------------------
// Views and emission.
// ---------------------------------------------------------------------------

TreeCoding::LeafView TreeCoding::view() const {
  LeafView v;
  if (kind_ == CodingKind::ultrametric) {
    // BFS order; the "word" is the digit path from the root.
    std::vector<std::string> words(parent_.size());
    std::vector<int> child_count(parent_.size(), 0);
    for (std::size_t i = 1; i < parent_.size(); ++i) {
      int p = parent_[i];
      words[i] = words[p] + static_cast<char>('0' + child_count[p]++);
    }
    v.word = std::move(words);
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      v.level.push_back(level_[i]);
      v.label.push_back(-1);
    }
    return v;
  }
  std::vector<int> idx(leaves_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return prec(leaves_[a], leaves_[b]); });
  for (int i : idx) {
    v.word.push_back(leaves_[i]);
    v.level.push_back(static_cast<int>(leaves_[i].size()));
    v.label.push_back(labels_[i]);
  }
  return v;
}

Language TreeCoding::emitted_language(Reduct mode) const {
  std::vector<Symbol> syms;
  switch (kind_) {
    case CodingKind::devlin:
      syms = {{"<", 2}};
      break;
    case CodingKind::rado:
      syms = {{"E", 2}};
      break;
    case CodingKind::qn:
      syms = {{"<", 2}};
      for (int p = 0; p < parts_; ++p) syms.push_back({"P" + std::to_string(p), 1});
      break;
    case CodingKind::s2:
      syms = {{"E", 2}};
      break;
    case CodingKind::ultrametric:
      syms = {{"T<", 2}};
      for (int l = 0; l <= height_; ++l) syms.push_back({"L" + std::to_string(l), 1});
      break;
  }
  if (mode == Reduct::full) {
    switch (kind_) {
      case CodingKind::devlin:
        syms.push_back({"R", 4});
        break;
      case CodingKind::rado:
        syms.push_back({"<", 2});
        syms.push_back({"R", 4});
        break;
      case CodingKind::qn:
        syms.push_back({"R", 4});
        break;
      case CodingKind::s2:
        syms.push_back({"<", 2});
        syms.push_back({"P0", 1});
        syms.push_back({"P1", 1});
        syms.push_back({"R", 4});
        break;
      case CodingKind::ultrametric:
        syms.push_back({"<", 2});
        break;
    }
  }
  return Language(syms);
}

Structure TreeCoding::emit(Reduct mode) const {
  Language lang = emitted_language(mode);
  if (kind_ == CodingKind::ultrametric) {
    int n = static_cast<int>(parent_.size());
    Structure s(lang, n);
    for (int j = 0; j < n; ++j)
      for (int a = parent_[j]; a >= 0; a = parent_[a]) s.add("T<", {a, j});
    for (int i = 0; i < n; ++i) s.add("L" + std::to_string(level_[i]), {i});
    if (mode == Reduct::full)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.add("<", {i, j});
    return s;
  }

  LeafView v = view();
  int n = static_cast<int>(v.word.size());
  Structure s(lang, n);

  bool has_order = kind_ != CodingKind::rado && kind_ != CodingKind::s2;
  if (has_order || mode == Reduct::full)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s.add("<", {i, j});

  if (kind_ == CodingKind::rado) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const TreeNode& shorter = v.word[i].size() < v.word[j].size() ? v.word[i] : v.word[j];
        const TreeNode& longer = v.word[i].size() < v.word[j].size() ? v.word[j] : v.word[i];
        if (longer[shorter.size()] == '1') {
          s.add("E", {i, j});
          s.add("E", {j, i});
        }
      }
  }

  if (kind_ == CodingKind::s2) {
    // Arcs of the tournament: within a part the coded order wins, across
    // parts it reverses.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (v.label[i] == v.label[j])
          s.add("E", {i, j});
        else
          s.add("E", {j, i});
      }
  }

  bool has_parts = kind_ == CodingKind::qn || (kind_ == CodingKind::s2 && mode == Reduct::full);
  if (has_parts)
    for (int i = 0; i < n; ++i) s.add("P" + std::to_string(v.label[i]), {i});

  if (mode == Reduct::full) {
    std::vector<std::vector<int>> ml(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
      ml[i][i] = v.level[i];
      for (int j = i + 1; j < n; ++j)
        ml[i][j] = ml[j][i] = static_cast<int>(meet(v.word[i], v.word[j]).size());
    }
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = c; d < n; ++d)
            if (ml[a][b] <= ml[c][d]) s.add("R", {a, b, c, d});
  }
  return s;
}

std::string TreeCoding::dot() const {
  std::ostringstream out;
  out << "digraph coding {\n  rankdir=TB;\n  node [fontsize=10];\n";
  if (kind_ == CodingKind::ultrametric) {
    for (std::size_t i = 0; i < parent_.size(); ++i)
      out << "  n" << i << " [label=\"" << level_[i] << "\" shape=circle];\n";
    for (std::size_t i = 1; i < parent_.size(); ++i)
      out << "  n" << parent_[i] << " -> n" << i << ";\n";
    out << "}\n";
    return out.str();
  }
  LeafView v = view();
  int n = static_cast<int>(v.word.size());
  // Skeleton nodes: leaves plus all pairwise meets.
  std::vector<TreeNode> nodes = v.word;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) nodes.push_back(meet(v.word[i], v.word[j]));
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto id_of = [&](const TreeNode& w) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), w) - nodes.begin());
  };
  std::vector<bool> is_leaf(nodes.size(), false);
  std::vector<int> leaf_label(nodes.size(), -1);
  for (int i = 0; i < n; ++i) {
    is_leaf[id_of(v.word[i])] = true;
    leaf_label[id_of(v.word[i])] = v.label[i];
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out << "  n" << i << " [label=\"" << nodes[i].size();
    bool parts = kind_ == CodingKind::qn || kind_ == CodingKind::s2;
    if (is_leaf[i] && parts) out << ":P" << leaf_label[i];
    out << "\" shape=" << (is_leaf[i] ? "box" : "circle") << "];\n";
  }
  // Parent = longest proper prefix present among the skeleton nodes.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    int best = -1;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (i == j || nodes[j].size() >= nodes[i].size()) continue;
      if (nodes[i].compare(0, nodes[j].size(), nodes[j]) != 0) continue;
      if (best < 0 || nodes[j].size() > nodes[best].size()) best = static_cast<int>(j);
    }
    if (best >= 0) out << "  n" << best << " -> n" << i << ";\n";
  }
  out << "}\n";
  return out.str();
}

TreeCoding grow_devlin(int rounds) {
  TreeCoding c = TreeCoding::devlin();
  c.grow(rounds);
  return c;
}

TreeCoding grow_rado(int rounds) {
  TreeCoding c = TreeCoding::rado();
  c.grow(rounds);
  return c;
}

TreeCoding build_qn(int parts, int rounds) {
  TreeCoding c = TreeCoding::qn(parts);
  c.grow(rounds);
  return c;
}

TreeCoding build_s2(int rounds) {
  TreeCoding c = TreeCoding::s2();
  c.grow(rounds);
  return c;
}

TreeCoding build_ultrametric(int height, int branch) {
  return TreeCoding::ultrametric(height, branch);
}

}  // namespace brw
