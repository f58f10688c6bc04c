#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "brw/coding.hpp"
#include "brw/embed.hpp"
#include "brw/structure.hpp"

using namespace brw;

namespace {

// Strong diagonality of an antichain: leaf levels pairwise distinct, distinct
// meet nodes sit at pairwise distinct levels, and no leaf level collides with
// a meet level.
void check_strongly_diagonal(const std::vector<TreeNode>& leaves) {
  std::set<std::size_t> leaf_levels;
  for (const auto& w : leaves) {
    CHECK(leaf_levels.insert(w.size()).second);
  }
  std::set<TreeNode> meets;
  for (std::size_t i = 0; i < leaves.size(); ++i)
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      CHECK(!comparable(leaves[i], leaves[j]));
      meets.insert(meet(leaves[i], leaves[j]));
    }
  std::set<std::size_t> meet_levels;
  for (const auto& m : meets) {
    CHECK(meet_levels.insert(m.size()).second);
    CHECK(leaf_levels.count(m.size()) == 0);
  }
}

// Interval order on tree words: z lies strictly to the right of x when they
// are incomparable with x first, or z extends x and turns right at |x|.
bool right_of(const TreeNode& z, const TreeNode& x) {
  if (comparable(z, x)) return z.size() > x.size() && z[x.size()] == '1';
  return prec(x, z);
}
bool left_of(const TreeNode& z, const TreeNode& y) {
  if (comparable(z, y)) return z.size() > y.size() && z[y.size()] == '0';
  return prec(z, y);
}

}  // namespace

TEST_CASE("meet and comparability on binary words") {
  CHECK(meet("00", "01") == "0");
  CHECK(meet("0110", "010") == "01");
  CHECK(meet("10", "01") == "");
  CHECK(meet("011", "011") == "011");
  CHECK(comparable("01", "0110"));
  CHECK(comparable("01", "01"));
  CHECK(comparable("", "1"));
  CHECK(!comparable("00", "01"));
}

TEST_CASE("prec orders antichains by the bit below the meet") {
  CHECK(prec("00", "01"));
  CHECK(!prec("01", "00"));
  CHECK(prec("011", "10"));
  CHECK_THROWS_AS(prec("0", "01"), std::invalid_argument);
  CHECK_THROWS_AS(prec("01", "01"), std::invalid_argument);
}

TEST_CASE("relation_R compares meet levels of weakly sorted pairs") {
  TreeNode a = "00", b = "010";
  // |a ^ b| = 1, |a| = 2, |b| = 3.
  CHECK(relation_R(a, a, b, b));        // 2 <= 3
  CHECK(!relation_R(b, b, a, a));       // 3 <= 2 fails
  CHECK(!relation_R(a, a, a, b));       // 2 <= 1 fails
  CHECK(relation_R(a, b, a, b));        // equal meets, reflexive
  CHECK(relation_R(a, b, b, b));        // 1 <= 3
  CHECK(relation_R(b, b, b, b));
  CHECK_THROWS_AS(relation_R(b, a, a, b), std::invalid_argument);  // first pair reversed
  CHECK_THROWS_AS(relation_R(a, b, b, a), std::invalid_argument);  // second pair reversed
  CHECK_THROWS_AS(relation_R(a, "001", b, b), std::invalid_argument);  // comparable pair
}

TEST_CASE("the first splitting round produces {0, 10}") {
  TreeCoding c = grow_devlin(1);
  auto v = c.view();
  REQUIRE(v.word.size() == 2);
  CHECK(v.word[0] == "0");
  CHECK(v.word[1] == "10");
}

TEST_CASE("splitting rounds add one leaf each and stay strongly diagonal") {
  TreeCoding c = TreeCoding::devlin();
  CHECK(c.leaf_count() == 1);
  for (int r = 1; r <= 14; ++r) {
    c.grow(1);
    CHECK(c.leaf_count() == r + 1);
  }
  check_strongly_diagonal(c.leaves());
  auto v = c.view();
  for (std::size_t i = 0; i + 1 < v.word.size(); ++i) CHECK(prec(v.word[i], v.word[i + 1]));
}

TEST_CASE("the coded order densifies: a leaf lands between any two") {
  const int k = 6;
  TreeCoding c = grow_devlin(k);
  auto frozen = c.view();
  const int extra = 3 * c.leaf_count();
  c.grow(extra);
  const auto& all = c.leaves();
  for (std::size_t i = 0; i < frozen.word.size(); ++i)
    for (std::size_t j = i + 1; j < frozen.word.size(); ++j) {
      bool found = false;
      for (const auto& z : all)
        if (right_of(z, frozen.word[i]) && left_of(z, frozen.word[j])) {
          found = true;
          break;
        }
      CHECK_MESSAGE(found, "no leaf between ", frozen.word[i], " and ", frozen.word[j]);
    }
}

TEST_CASE("devlin base emission is the coded linear order") {
  TreeCoding c = grow_devlin(9);
  Structure base = c.emit(Reduct::base);
  CHECK(base == make_chain(10));
  Structure full = c.emit(Reduct::full);
  CHECK(full.language().index_of("R") >= 0);
  CHECK(full.reduct(base.language()) == base);
}

TEST_CASE("emitted level comparisons agree with the word matrix") {
  TreeCoding c = grow_devlin(7);
  auto v = c.view();
  Structure full = c.emit(Reduct::full);
  const int n = c.leaf_count();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int x = 0; x < n; ++x)
        for (int y = x; y < n; ++y)
          CHECK(full.holds("R", {a, b, x, y}) ==
                relation_R(v.word[a], v.word[b], v.word[x], v.word[y]));
}

TEST_CASE("level comparisons are intrinsic to sub-antichains") {
  TreeCoding c = grow_devlin(11);
  auto v = c.view();
  Structure full = c.emit(Reduct::full);
  // Restricting the emitted structure to a subset matches recomputing the
  // relations from the subset's own words.
  std::vector<Tuple> subsets = {{0, 2, 5, 9}, {1, 3, 4, 7, 11}, {0, 1, 10}};
  for (const Tuple& sub : subsets) {
    Structure got = full.induced(sub);
    const int m = static_cast<int>(sub.size());
    Structure want(full.language(), m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) want.add("<", {i, j});
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b)
        for (int x = 0; x < m; ++x)
          for (int y = x; y < m; ++y)
            if (relation_R(v.word[sub[a]], v.word[sub[b]], v.word[sub[x]], v.word[sub[y]]))
              want.add("R", {a, b, x, y});
    CHECK(got == want);
  }
}

TEST_CASE("part labels cycle through creation order") {
  TreeCoding c = build_qn(3, 12);
  Structure base = c.emit(Reduct::base);
  CHECK(base.language().index_of("P0") >= 0);
  CHECK(base.language().index_of("P2") >= 0);
  // Every vertex carries exactly one part.
  int covered = 0;
  for (int p = 0; p < 3; ++p) covered += static_cast<int>(base.tuples("P" + std::to_string(p)).size());
  CHECK(covered == c.leaf_count());
  // All parts are realized after enough rounds.
  for (int p = 0; p < 3; ++p) CHECK(!base.tuples("P" + std::to_string(p)).empty());
  // The words themselves follow the unlabeled splitting rule.
  TreeCoding plain = grow_devlin(12);
  CHECK(plain.leaves() == c.leaves());
}

TEST_CASE("the labeled tournament follows the part rule") {
  TreeCoding c = build_s2(13);
  auto v = c.view();
  Structure t = c.emit(Reduct::base);
  const int n = c.leaf_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool same = v.label[i] == v.label[j];
      CHECK(t.holds("E", {i, j}) == same);
      CHECK(t.holds("E", {j, i}) == !same);
    }
}

TEST_CASE("tournament neighbourhoods are transitive") {
  TreeCoding c = build_s2(14);
  Structure t = c.emit(Reduct::base);
  const int n = c.leaf_count();
  REQUIRE(n >= 12);
  auto arc = [&](int a, int b) { return t.holds("E", {a, b}); };
  for (int v = 0; v < n; ++v) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
          if (a == b || b == d || a == d) continue;
          if (a == v || b == v || d == v) continue;
          // Restricted to either neighbourhood of v, arcs never cycle.
          bool out = arc(v, a) && arc(v, b) && arc(v, d);
          bool in = arc(a, v) && arc(b, v) && arc(d, v);
          if (!out && !in) continue;
          CHECK(!(arc(a, b) && arc(b, d) && arc(d, a)));
        }
  }
}

TEST_CASE("graph coding stays diagonal and deterministic") {
  TreeCoding c = grow_rado(40);
  CHECK(c.leaf_count() == 40);
  check_strongly_diagonal(c.leaves());
  TreeCoding again = grow_rado(40);
  CHECK(c.leaves() == again.leaves());
}

TEST_CASE("graph emission matches the passing-bit rule") {
  TreeCoding c = grow_rado(24);
  auto v = c.view();
  Structure g = c.emit(Reduct::base);
  const int n = c.leaf_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const TreeNode& shorter = v.word[i].size() < v.word[j].size() ? v.word[i] : v.word[j];
      const TreeNode& longer = v.word[i].size() < v.word[j].size() ? v.word[j] : v.word[i];
      bool want = longer[shorter.size()] == '1';
      CHECK(g.holds("E", {i, j}) == want);
      CHECK(g.holds("E", {j, i}) == want);
    }
  Structure fullg = c.emit(Reduct::full);
  CHECK(fullg.language().index_of("<") >= 0);
  CHECK(fullg.language().index_of("R") >= 0);
}

TEST_CASE("every small adjacency pattern is eventually realized") {
  // Over the leaves present at an early round, each adjacency pattern on at
  // most three of them is realized by some leaf within a bounded number of
  // further rounds.
  const int k = 6;
  const int window = 120;  // witnesses measured to appear within ~5k rounds
  TreeCoding c = grow_rado(k + window);
  const int n = c.leaf_count();
  auto satisfied = [&](const std::vector<int>& targets, unsigned pattern) {
    for (int z = 0; z < n; ++z) {
      if (std::find(targets.begin(), targets.end(), z) != targets.end()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < targets.size(); ++i)
        if (c.edge(targets[i], z) != (((pattern >> i) & 1u) != 0)) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  };
  for (int a = 0; a < k; ++a) {
    for (unsigned p = 0; p < 2; ++p) CHECK_MESSAGE(satisfied({a}, p), "single ", a, " pattern ", p);
    for (int b = a + 1; b < k; ++b) {
      for (unsigned p = 0; p < 4; ++p) CHECK_MESSAGE(satisfied({a, b}, p), "pair ", a, ",", b, " pattern ", p);
      for (int d = b + 1; d < k; ++d)
        for (unsigned p = 0; p < 8; ++p)
          CHECK_MESSAGE(satisfied({a, b, d}, p), "triple ", a, ",", b, ",", d, " pattern ", p);
    }
  }
}

TEST_CASE("ultrametric codings are complete level trees") {
  TreeCoding c = build_ultrametric(2, 2);
  CHECK(c.leaf_count() == 7);
  Structure s = c.emit(Reduct::base);
  CHECK(s.holds("L0", {0}));
  CHECK(s.holds("T<", {0, 3}));   // root above a grandchild
  CHECK(!s.holds("T<", {3, 0}));
  CHECK(!s.holds("T<", {1, 2}));  // siblings incomparable
  // Transitivity scan.
  const int n = c.leaf_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        if (s.holds("T<", {a, b}) && s.holds("T<", {b, d})) CHECK(s.holds("T<", {a, d}));
  Structure f = c.emit(Reduct::full);
  CHECK(f.holds("<", {0, 6}));
  CHECK_THROWS_AS(c.grow(1), std::logic_error);
  CHECK_THROWS_AS(build_ultrametric(-1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_ultrametric(2, 0), std::invalid_argument);
  CHECK(build_ultrametric(3, 3).leaf_count() == 40);
}

TEST_CASE("dot export renders the skeleton") {
  TreeCoding c = grow_devlin(4);
  std::string d = c.dot();
  CHECK(d.find("digraph") != std::string::npos);
  CHECK(d.find("box") != std::string::npos);
  CHECK(d.find("circle") != std::string::npos);
  CHECK(build_ultrametric(1, 2).dot().find("digraph") != std::string::npos);
}
