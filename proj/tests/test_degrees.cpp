#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "brw/coding.hpp"
#include "brw/degrees.hpp"
#include "brw/oracle.hpp"
#include "brw/structure.hpp"

using namespace brw;

namespace {

// Independent recount of the rank patterns: permutations of 0..2k-2 split
// into k leaf ranks and k-1 meet ranks, each leaf deeper than its adjacent
// meets. Written from scratch so the oracle has its own check.
long brute_pattern_count(int k) {
  int slots = 2 * k - 1;
  std::vector<int> perm(slots);
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      if (i > 0 && perm[i] < perm[k + i - 1]) ok = false;
      if (i + 1 < k && perm[i] < perm[k + i]) ok = false;
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

Structure labeled_chain(const std::vector<int>& labels, int parts) {
  std::vector<Symbol> syms = {{"<", 2}};
  for (int p = 0; p < parts; ++p) syms.push_back({"P" + std::to_string(p), 1});
  Structure s(Language(syms), static_cast<int>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    s.add("P" + std::to_string(labels[i]), {static_cast<int>(i)});
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      s.add("<", {static_cast<int>(i), static_cast<int>(j)});
  }
  return s;
}

}  // namespace

TEST_CASE("chain degrees follow the tangent numbers") {
  CHECK(devlin_oracle(1) == 1);
  CHECK(devlin_oracle(2) == 2);
  CHECK(devlin_oracle(3) == 16);
  CHECK(devlin_oracle(4) == 272);
  CHECK(devlin_oracle(5) == 7936);
  for (int k = 1; k <= 4; ++k) CHECK(devlin_oracle(k) == brute_pattern_count(k));
  CHECK_THROWS_AS(devlin_oracle(0), std::invalid_argument);
  CHECK_THROWS_AS(devlin_oracle(7), std::invalid_argument);
}

TEST_CASE("oracle structures are distinct and reduce to the chain") {
  for (int k = 2; k <= 3; ++k) {
    auto structures = devlin_oracle_structures(k);
    CHECK((std::int64_t)structures.size() == devlin_oracle(k));
    std::set<std::string> enc;
    for (const auto& s : structures) {
      CHECK(enc.insert(s.encode()).second);
      CHECK(s.reduct(Language({{"<", 2}})) == make_chain(k));
    }
  }
}

TEST_CASE("realized words reproduce the rank pattern structures") {
  // Enumerate the k=3 patterns by brute force, realize each as words, read
  // the level relation back off the words, and compare the full structure
  // sets.
  const int k = 3;
  std::set<std::string> from_words;
  std::vector<int> perm(2 * k - 1);
  std::iota(perm.begin(), perm.end(), 0);
  Language lang({{"<", 2}, {"R", 4}});
  do {
    std::vector<int> leaf(perm.begin(), perm.begin() + k);
    std::vector<int> met(perm.begin() + k, perm.end());
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      if (i > 0 && leaf[i] < met[i - 1]) ok = false;
      if (i + 1 < k && leaf[i] < met[i]) ok = false;
    }
    if (!ok) continue;
    auto words = realize_rank_pattern(leaf, met);
    REQUIRE(words.size() == k);
    for (int i = 0; i < k; ++i) CHECK((int)words[i].size() == leaf[i]);
    for (int i = 0; i + 1 < k; ++i) {
      CHECK(prec(words[i], words[i + 1]));
      CHECK((int)meet(words[i], words[i + 1]).size() == met[i]);
    }
    Structure s(lang, k);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) s.add("<", {i, j});
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b)
        for (int x = 0; x < k; ++x)
          for (int y = x; y < k; ++y)
            if (relation_R(words[a], words[b], words[x], words[y])) s.add("R", {a, b, x, y});
    from_words.insert(s.encode());
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::string> from_oracle;
  for (const auto& s : devlin_oracle_structures(k)) from_oracle.insert(s.encode());
  CHECK(from_words == from_oracle);
}

TEST_CASE("realize_rank_pattern rejects malformed patterns") {
  CHECK_THROWS_AS(realize_rank_pattern({0, 1}, {2}), std::invalid_argument);  // leaf under meet
  CHECK_THROWS_AS(realize_rank_pattern({1, 2}, {1}), std::invalid_argument);  // not a permutation
  CHECK_THROWS_AS(realize_rank_pattern({1, 2}, {}), std::invalid_argument);   // arity mismatch
}

TEST_CASE("expansions of small chains match the oracle set") {
  TreeCoding c = grow_devlin(10);
  SUBCASE("a point acquires a single expansion") {
    auto exp = enumerate_expansions(make_chain(1), c);
    CHECK(exp.size() == 1);
  }
  SUBCASE("a pair acquires both level orders") {
    auto exp = enumerate_expansions(make_chain(2), c);
    REQUIRE(exp.size() == 2);
    // The two patterns differ exactly in whether the first leaf is the
    // shallower one.
    CHECK(exp[0].holds("R", {0, 0, 1, 1}) != exp[1].holds("R", {0, 0, 1, 1}));
    std::set<std::string> oracle;
    for (const auto& s : devlin_oracle_structures(2)) oracle.insert(s.encode());
    for (const auto& s : exp) CHECK(oracle.count(s.encode()) == 1);
  }
  SUBCASE("triple expansions stay inside the oracle set") {
    auto exp = enumerate_expansions(make_chain(3), c);
    CHECK(exp.size() <= 16);
    std::set<std::string> oracle;
    for (const auto& s : devlin_oracle_structures(3)) oracle.insert(s.encode());
    for (const auto& s : exp) CHECK(oracle.count(s.encode()) == 1);
  }
}

TEST_CASE("stabilized pair degree is two") {
  std::vector<int> schedule = {2, 3, 4, 5, 6, 7};
  DegreeResult r = stabilized_degree(make_chain(2), TreeCoding::devlin(), schedule, 3);
  CHECK(r.degree == 2);
  CHECK(r.stabilized);
  for (std::size_t i = 1; i < r.history.size(); ++i)
    CHECK(r.history[i].accumulated >= r.history[i - 1].accumulated);
}

TEST_CASE("stabilized triple degree reaches the oracle") {
  // The accumulated count hits 16 by round 60 and stays flat (measured).
  // There is an earlier plateau at 14 around rounds 10-50, so the schedule
  // starts past the measured coverage depth rather than inside the plateau.
  DegreeResult r = stabilized_degree(make_chain(3), TreeCoding::devlin(), {60, 90, 120}, 2);
  CHECK(r.degree == devlin_oracle(3));
  CHECK(r.stabilized);
}

TEST_CASE("stabilized labeled and graph degrees reach their oracles") {
  // Measured depths: labeled triple 16 by round 120, graph triangle 96 by 40.
  Structure tri = labeled_chain({0, 1, 0}, 2);
  DegreeResult q = stabilized_degree(tri, TreeCoding::qn(2), {120, 150, 180}, 2);
  CHECK(q.degree == qn_oracle(tri, 2));
  CHECK(q.stabilized);

  Structure k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  DegreeResult g = stabilized_degree(k3, TreeCoding::rado(), {40, 60, 80}, 2);
  CHECK(g.degree == rado_oracle(k3));
  CHECK(g.stabilized);
}

TEST_CASE("accumulated count at one checkpoint equals the literal expansion count") {
  for (int rounds : {6, 9}) {
    TreeCoding c = grow_devlin(rounds);
    auto exp = enumerate_expansions(make_chain(3), c);
    DegreeResult r = stabilized_degree(make_chain(3), TreeCoding::devlin(), {rounds}, 1);
    CHECK(r.degree == (std::int64_t)exp.size());
  }
}

TEST_CASE("set degrees are factorials") {
  CHECK(set_degree(1) == 1);
  CHECK(set_degree(2) == 2);
  CHECK(set_degree(3) == 6);
  CHECK(set_degree(4) == 24);
  CHECK_THROWS_AS(set_degree(9), std::invalid_argument);
}

TEST_CASE("labeled chain degrees ignore the labels") {
  CHECK(qn_oracle(labeled_chain({0, 1}, 2), 2) == 2);
  CHECK(qn_oracle(labeled_chain({1, 0, 1}, 2), 2) == 16);
  CHECK(qn_oracle_structures(labeled_chain({0, 1}, 2), 2).size() == 2);
  // Labels ride along unchanged in every expansion.
  for (const auto& s : qn_oracle_structures(labeled_chain({1, 0, 1}, 2), 2)) {
    CHECK(s.holds("P1", {0}));
    CHECK(s.holds("P0", {1}));
    CHECK(s.holds("P1", {2}));
  }
  SUBCASE("a wrongly ordered chain is rejected") {
    Structure bad(Language({{"<", 2}, {"P0", 1}}), 2);
    bad.add("<", {1, 0});
    bad.add("P0", {0});
    bad.add("P0", {1});
    CHECK_THROWS_AS(qn_oracle(bad, 1), std::invalid_argument);
  }
  SUBCASE("a vertex without a part is rejected") {
    Structure bad(Language({{"<", 2}, {"P0", 1}, {"P1", 1}}), 2);
    bad.add("<", {0, 1});
    bad.add("P0", {0});
    CHECK_THROWS_AS(qn_oracle(bad, 2), std::invalid_argument);
  }
}

TEST_CASE("tournament degrees count order-labeling pairs times patterns") {
  Structure point = make_tournament(1, {});
  CHECK(s2_oracle(point) == 2);
  Structure arc = make_tournament(2, {{0, 1}});
  CHECK(s2_oracle(arc) == 8);  // 4 consistent (order, labeling) pairs x 2 patterns
  Structure cyc = make_tournament(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(s2_oracle(cyc) == 96);  // 6 pairs x 16 patterns
  Structure trans = make_tournament(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(s2_oracle(trans) == 96);
  auto structures = s2_oracle_structures(cyc);
  CHECK((std::int64_t)structures.size() == s2_oracle(cyc));
  std::set<std::string> enc;
  for (const auto& s : structures) CHECK(enc.insert(s.encode()).second);
  SUBCASE("non-tournaments are rejected") {
    CHECK_THROWS_AS(s2_oracle(make_graph(2, {{0, 1}})), std::invalid_argument);
    CHECK_THROWS_AS(s2_oracle(make_tournament(2, {})), std::invalid_argument);
  }
}

TEST_CASE("graph degrees filter rank patterns by passing consistency") {
  Structure one(Language({{"E", 2}}), 1);
  CHECK(rado_oracle(one) == 1);
  Structure edge = make_graph(2, {{0, 1}});
  Structure non_edge(Language({{"E", 2}}), 2);
  CHECK(rado_oracle(edge) == 4);
  CHECK(rado_oracle(non_edge) == 4);
  // With every pair adjacent (or none), passing consistency never filters:
  // all 3! orders x 16 patterns survive.
  Structure k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  Structure e3(Language({{"E", 2}}), 3);
  CHECK(rado_oracle(k3) == 96);
  CHECK(rado_oracle(e3) == 96);
  // The path loses the patterns that put the middle vertex below the meet
  // of the endpoints' images when its adjacencies differ.
  Structure p3 = make_graph(3, {{0, 1}, {1, 2}});
  CHECK(rado_oracle(p3) < 96);
  auto structures = rado_oracle_structures(p3);
  CHECK((std::int64_t)structures.size() == rado_oracle(p3));
  std::set<std::string> enc;
  for (const auto& s : structures) CHECK(enc.insert(s.encode()).second);
  CHECK_THROWS_AS(rado_oracle(make_tournament(2, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("level tree degrees multiply sibling orders") {
  Language lang({{"T<", 2}, {"L0", 1}, {"L1", 1}, {"L2", 1}});
  auto node = [&](Structure& s, int v, int lvl) { s.add("L" + std::to_string(lvl), {v}); };

  SUBCASE("a root alone") {
    Structure a(lang, 1);
    node(a, 0, 0);
    CHECK(ultrametric_oracle(a) == 1);
  }
  SUBCASE("two siblings under a root") {
    Structure a(lang, 3);
    node(a, 0, 0);
    node(a, 1, 1);
    node(a, 2, 1);
    a.add("T<", {0, 1});
    a.add("T<", {0, 2});
    CHECK(ultrametric_oracle(a) == 2);
  }
  SUBCASE("two parentless nodes with one child each") {
    // Sibling order at the lower level is inherited from the parents, so
    // only the two root orders count.
    Structure a(lang, 4);
    node(a, 0, 1);
    node(a, 1, 1);
    node(a, 2, 2);
    node(a, 3, 2);
    a.add("T<", {0, 2});
    a.add("T<", {1, 3});
    CHECK(ultrametric_oracle(a) == 2);
  }
  SUBCASE("the full binary tree of height two") {
    TreeCoding c = build_ultrametric(2, 2);
    Structure a = c.emit(Reduct::base);
    CHECK(ultrametric_oracle(a) == 8);
  }
  SUBCASE("level-inconsistent input is rejected") {
    Structure a(lang, 2);
    node(a, 0, 1);
    node(a, 1, 0);
    a.add("T<", {0, 1});  // deeper node above a shallower one
    CHECK_THROWS_AS(ultrametric_oracle(a), std::invalid_argument);
  }
}

TEST_CASE("level tree degrees match enumeration in the complete tree") {
  TreeCoding c = build_ultrametric(2, 2);
  Language lang({{"T<", 2}, {"L0", 1}, {"L1", 1}, {"L2", 1}});

  Structure siblings(lang, 3);
  siblings.add("L0", {0});
  siblings.add("L1", {1});
  siblings.add("L1", {2});
  siblings.add("T<", {0, 1});
  siblings.add("T<", {0, 2});
  DegreeResult r = stabilized_degree(siblings, c, {}, 1);
  CHECK(r.stabilized);
  CHECK(r.degree == ultrametric_oracle(siblings));

  Structure tworoots(lang, 2);
  tworoots.add("L1", {0});
  tworoots.add("L1", {1});
  DegreeResult r2 = stabilized_degree(tworoots, c, {}, 1);
  CHECK(r2.degree == 2);
  CHECK(r2.degree == ultrametric_oracle(tworoots));
}

TEST_CASE("checkpoint schedules ascend geometrically") {
  auto cps = geometric_checkpoints(4, 40, 1.5);
  REQUIRE(!cps.empty());
  CHECK(cps.front() == 4);
  CHECK(cps.back() == 40);
  CHECK(std::is_sorted(cps.begin(), cps.end()));
  for (std::size_t i = 1; i < cps.size(); ++i) CHECK(cps[i] > cps[i - 1]);
  CHECK_THROWS_AS(geometric_checkpoints(0, 10), std::invalid_argument);
  CHECK_THROWS_AS(geometric_checkpoints(4, 2), std::invalid_argument);
}
