#include "brw/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace brw {

namespace {

// Visits every valid rank pattern for k sorted leaves: leaf_rank[0..k) and
// meet_rank[0..k-1) form a permutation of 0..2k-2 with each leaf strictly
// deeper (larger rank) than its adjacent meets.
template <typename Visit>
void for_each_rank_pattern(int k, Visit visit) {
  if (k < 1) throw std::invalid_argument("rank patterns: k must be >= 1");
  if (k > 6) throw std::invalid_argument("rank patterns: k must be <= 6");
  int slots = 2 * k - 1;
  std::vector<int> ranks(slots);
  std::iota(ranks.begin(), ranks.end(), 0);
  std::vector<int> leaf(k), met(std::max(0, k - 1));
  do {
    for (int i = 0; i < k; ++i) leaf[i] = ranks[i];
    for (int i = 0; i + 1 < k; ++i) met[i] = ranks[k + i];
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      if (i > 0 && leaf[i] < met[i - 1]) ok = false;
      if (i + 1 < k && leaf[i] < met[i]) ok = false;
    }
    if (ok) visit(leaf, met);
  } while (std::next_permutation(ranks.begin(), ranks.end()));
}

// Depth rank of the meet of the leaves at sorted positions i < j: the
// shallowest adjacent meet between them.
int meet_rank_of(const std::vector<int>& met, int i, int j) {
  int r = met[i];
  for (int t = i + 1; t < j; ++t) r = std::min(r, met[t]);
  return r;
}

// Adds R-tuples for a rank pattern, applying `vertex` to map sorted
// positions to universe elements.
template <typename Map>
void add_pattern_R(Structure& s, const std::vector<int>& leaf, const std::vector<int>& met,
                   Map vertex) {
  int k = static_cast<int>(leaf.size());
  auto ml = [&](int i, int j) { return i == j ? leaf[i] : meet_rank_of(met, i, j); };
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b)
      for (int c = 0; c < k; ++c)
        for (int d = c; d < k; ++d)
          if (ml(a, b) <= ml(c, d)) s.add("R", {vertex(a), vertex(b), vertex(c), vertex(d)});
}

void require_symbol(const Structure& a, const std::string& name, int arity, const char* who) {
  int idx = a.language().index_of(name);
  if (idx < 0 || a.language().at(idx).arity != arity)
    throw std::invalid_argument(std::string(who) + ": language must carry " + name + "/" +
                                std::to_string(arity));
}

void require_graph(const Structure& a, const char* who) {
  require_symbol(a, "E", 2, who);
  for (const auto& t : a.tuples("E")) {
    if (t[0] == t[1]) throw std::invalid_argument(std::string(who) + ": loops not allowed");
    if (!a.holds("E", {t[1], t[0]}))
      throw std::invalid_argument(std::string(who) + ": edges must be symmetric");
  }
}

void require_tournament(const Structure& a, const char* who) {
  require_symbol(a, "E", 2, who);
  for (int u = 0; u < a.size(); ++u) {
    if (a.holds("E", {u, u})) throw std::invalid_argument(std::string(who) + ": loops not allowed");
    for (int v = u + 1; v < a.size(); ++v)
      if (a.holds("E", {u, v}) == a.holds("E", {v, u}))
        throw std::invalid_argument(std::string(who) +
                                    ": exactly one arc direction required per pair");
  }
}

}  // namespace

std::int64_t devlin_oracle(int k) {
  std::int64_t count = 0;
  for_each_rank_pattern(k, [&](const std::vector<int>&, const std::vector<int>&) { ++count; });
  return count;
}

std::vector<Structure> devlin_oracle_structures(int k) {
  Language lang({{"<", 2}, {"R", 4}});
  std::vector<Structure> out;
  for_each_rank_pattern(k, [&](const std::vector<int>& leaf, const std::vector<int>& met) {
    Structure s(lang, k);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) s.add("<", {i, j});
    add_pattern_R(s, leaf, met, [](int p) { return p; });
    out.push_back(std::move(s));
  });
  return out;
}

std::vector<TreeNode> realize_rank_pattern(const std::vector<int>& leaf_rank,
                                           const std::vector<int>& meet_rank) {
  int k = static_cast<int>(leaf_rank.size());
  if (k < 1 || static_cast<int>(meet_rank.size()) != k - 1)
    throw std::invalid_argument("realize_rank_pattern: need k leaves and k-1 meets");
  std::vector<int> all(leaf_rank);
  all.insert(all.end(), meet_rank.begin(), meet_rank.end());
  std::vector<int> sorted(all);
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 2 * k - 1; ++i)
    if (sorted[i] != i)
      throw std::invalid_argument("realize_rank_pattern: ranks must form a permutation of 0..2k-2");
  for (int i = 0; i < k; ++i) {
    if (i > 0 && leaf_rank[i] < meet_rank[i - 1])
      throw std::invalid_argument("realize_rank_pattern: leaf above its left meet");
    if (i + 1 < k && leaf_rank[i] < meet_rank[i])
      throw std::invalid_argument("realize_rank_pattern: leaf above its right meet");
  }

  std::vector<TreeNode> words(k);
  // Recursive splitting: the shallowest meet in a block is the node where
  // its left and right halves diverge.
  auto build = [&](auto&& self, int lo, int hi, TreeNode prefix) -> void {
    if (lo == hi) {
      prefix.resize(leaf_rank[lo], '0');
      words[lo] = std::move(prefix);
      return;
    }
    int m = lo;
    for (int t = lo + 1; t < hi; ++t)
      if (meet_rank[t] < meet_rank[m]) m = t;
    prefix.resize(meet_rank[m], '0');
    self(self, lo, m, prefix + '0');
    self(self, m + 1, hi, prefix + '1');
  };
  build(build, 0, k - 1, "");
  return words;
}

std::int64_t rado_oracle(const Structure& a) {
  require_graph(a, "rado_oracle");
  std::int64_t total = 0;
  int k = a.size();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for_each_rank_pattern(k, [&](const std::vector<int>& leaf, const std::vector<int>& met) {
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
          for (int z = y + 1; z < k; ++z) {
            if (x == y || x == z) continue;
            if (leaf[x] < meet_rank_of(met, y, z) &&
                a.holds("E", {perm[x], perm[y]}) != a.holds("E", {perm[x], perm[z]}))
              return;
          }
      ++total;
    });
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<Structure> rado_oracle_structures(const Structure& a) {
  require_graph(a, "rado_oracle");
  Language lang({{"E", 2}, {"<", 2}, {"R", 4}});
  int k = a.size();
  std::vector<Structure> out;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for_each_rank_pattern(k, [&](const std::vector<int>& leaf, const std::vector<int>& met) {
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
          for (int z = y + 1; z < k; ++z) {
            if (x == y || x == z) continue;
            if (leaf[x] < meet_rank_of(met, y, z) &&
                a.holds("E", {perm[x], perm[y]}) != a.holds("E", {perm[x], perm[z]}))
              return;
          }
      Structure s(lang, k);
      for (const auto& t : a.tuples("E")) s.add("E", t);
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) s.add("<", {perm[i], perm[j]});
      add_pattern_R(s, leaf, met, [&](int p) { return perm[p]; });
      out.push_back(std::move(s));
    });
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

void require_labeled_chain(const Structure& a, int parts, const char* who) {
  require_symbol(a, "<", 2, who);
  for (int p = 0; p < parts; ++p) require_symbol(a, "P" + std::to_string(p), 1, who);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (a.holds("<", {i, j}) != (i < j))
        throw std::invalid_argument(std::string(who) +
                                    ": order must coincide with the universe order");
  for (int i = 0; i < a.size(); ++i) {
    int hits = 0;
    for (int p = 0; p < parts; ++p)
      if (a.holds("P" + std::to_string(p), {i})) ++hits;
    if (hits != 1)
      throw std::invalid_argument(std::string(who) + ": each vertex needs exactly one part");
  }
}

}  // namespace

std::int64_t qn_oracle(const Structure& a, int parts) {
  require_labeled_chain(a, parts, "qn_oracle");
  return devlin_oracle(a.size());
}

std::vector<Structure> qn_oracle_structures(const Structure& a, int parts) {
  require_labeled_chain(a, parts, "qn_oracle");
  std::vector<Symbol> syms = {{"<", 2}};
  for (int p = 0; p < parts; ++p) syms.push_back({"P" + std::to_string(p), 1});
  syms.push_back({"R", 4});
  Language lang(syms);
  int k = a.size();
  std::vector<Structure> out;
  for_each_rank_pattern(k, [&](const std::vector<int>& leaf, const std::vector<int>& met) {
    Structure s(lang, k);
    for (const auto& sym : a.language().symbols())
      for (const auto& t : a.tuples(sym.name)) s.add(sym.name, t);
    add_pattern_R(s, leaf, met, [](int p) { return p; });
    out.push_back(std::move(s));
  });
  return out;
}

std::int64_t s2_oracle(const Structure& a) {
  require_tournament(a, "s2_oracle");
  int k = a.size();
  std::int64_t pairs = 0;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned lab = 0; lab < (1u << k); ++lab) {
      bool ok = true;
      for (int i = 0; i < k && ok; ++i)
        for (int j = i + 1; j < k && ok; ++j) {
          bool same = ((lab >> i) & 1u) == ((lab >> j) & 1u);
          if (a.holds("E", {perm[i], perm[j]}) != same) ok = false;
        }
      if (ok) ++pairs;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return pairs * devlin_oracle(k);
}

std::vector<Structure> s2_oracle_structures(const Structure& a) {
  require_tournament(a, "s2_oracle");
  Language lang({{"E", 2}, {"<", 2}, {"P0", 1}, {"P1", 1}, {"R", 4}});
  int k = a.size();
  std::vector<Structure> out;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned lab = 0; lab < (1u << k); ++lab) {
      bool ok = true;
      for (int i = 0; i < k && ok; ++i)
        for (int j = i + 1; j < k && ok; ++j) {
          bool same = ((lab >> i) & 1u) == ((lab >> j) & 1u);
          if (a.holds("E", {perm[i], perm[j]}) != same) ok = false;
        }
      if (!ok) continue;
      for_each_rank_pattern(k, [&](const std::vector<int>& leaf, const std::vector<int>& met) {
        Structure s(lang, k);
        for (const auto& t : a.tuples("E")) s.add("E", t);
        for (int i = 0; i < k; ++i) {
          s.add(((lab >> i) & 1u) ? "P1" : "P0", {perm[i]});
          for (int j = i + 1; j < k; ++j) s.add("<", {perm[i], perm[j]});
        }
        add_pattern_R(s, leaf, met, [&](int p) { return perm[p]; });
        out.push_back(std::move(s));
      });
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::int64_t ultrametric_oracle(const Structure& a) {
  require_symbol(a, "T<", 2, "ultrametric_oracle");
  int n = a.size();
  std::vector<int> level(n, -1);
  for (const auto& sym : a.language().symbols()) {
    if (sym.name.size() < 2 || sym.name[0] != 'L' || sym.arity != 1) continue;
    int l = std::stoi(sym.name.substr(1));
    for (const auto& t : a.tuples(sym.name)) {
      if (level[t[0]] >= 0)
        throw std::invalid_argument("ultrametric_oracle: vertex on two levels");
      level[t[0]] = l;
    }
  }
  for (int v = 0; v < n; ++v)
    if (level[v] < 0) throw std::invalid_argument("ultrametric_oracle: vertex without a level");

  auto below = [&](int u, int v) { return a.holds("T<", {u, v}); };
  for (int u = 0; u < n; ++u) {
    if (below(u, u)) throw std::invalid_argument("ultrametric_oracle: T< must be irreflexive");
    for (int v = 0; v < n; ++v) {
      if (below(u, v) && level[u] >= level[v])
        throw std::invalid_argument("ultrametric_oracle: T< must increase levels");
      for (int w = 0; w < n; ++w)
        if (below(u, v) && below(v, w) && !below(u, w))
          throw std::invalid_argument("ultrametric_oracle: T< must be transitive");
    }
  }
  // Predecessors of each vertex must form a chain; the deepest one is the
  // parent within the pattern.
  std::vector<int> children(n, 0);
  std::int64_t degree = 1;
  auto factorial = [](int m) {
    std::int64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  int roots = 0;
  for (int v = 0; v < n; ++v) {
    int parent = -1;
    for (int u = 0; u < n; ++u) {
      if (!below(u, v)) continue;
      for (int w = 0; w < n; ++w)
        if (w != u && below(w, v) && !below(w, u) && !below(u, w))
          throw std::invalid_argument("ultrametric_oracle: predecessors must form a chain");
      if (parent < 0 || level[u] > level[parent]) parent = u;
    }
    if (parent < 0)
      ++roots;
    else
      ++children[parent];
  }
  degree = factorial(roots);
  for (int v = 0; v < n; ++v) degree *= factorial(children[v]);
  return degree;
}

}  // namespace brw
