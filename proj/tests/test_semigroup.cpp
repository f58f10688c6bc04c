#include "doctest.h"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "brw/semigroup.hpp"

using namespace brw;

namespace {

SemigroupTable right_zero(int n) {
  SemigroupTable s;
  s.table.assign(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) s.table[x][y] = y;
  return s;
}

SemigroupTable left_zero(int n) {
  SemigroupTable s;
  s.table.assign(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) s.table[x][y] = x;
  return s;
}

SemigroupTable cyclic(int n) {
  SemigroupTable s;
  s.table.assign(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) s.table[x][y] = (x + y) % n;
  return s;
}

// Left-zero pair times right-zero pair; element (a, b) is encoded as 2a + b.
SemigroupTable mixed_product() {
  SemigroupTable s;
  s.table.assign(4, std::vector<int>(4));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) s.table[2 * a + b][2 * c + d] = 2 * a + d;
  return s;
}

}  // namespace

TEST_CASE("associativity check finds the first bad triple") {
  CHECK(check_associativity(cyclic(3)).associative);
  CHECK(check_associativity(left_zero(3)).associative);
  CHECK(check_associativity(right_zero(5)).associative);

  // x*y = |x - y| on three elements: (1*1)*2 = 2 but 1*(1*2) = 0.
  SemigroupTable magma{{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}};
  AssociativityResult r = check_associativity(magma);
  CHECK_FALSE(r.associative);
  REQUIRE(r.witness.has_value());
  auto [x, y, z] = *r.witness;
  CHECK(magma.mul(magma.mul(x, y), z) != magma.mul(x, magma.mul(y, z)));
  // First in lexicographic order: nothing smaller violates.
  bool earlier_clean = true;
  for (int a = 0; a < 3 && earlier_clean; ++a)
    for (int b = 0; b < 3 && earlier_clean; ++b)
      for (int c = 0; c < 3 && earlier_clean; ++c) {
        if (std::array<int, 3>{a, b, c} >= *r.witness) {
          earlier_clean = false;
          break;
        }
        CHECK(magma.mul(magma.mul(a, b), c) == magma.mul(a, magma.mul(b, c)));
      }

  SemigroupTable ragged{{{0, 1}, {0}}};
  CHECK_THROWS_AS(check_associativity(ragged), std::invalid_argument);
}

TEST_CASE("idempotents of the hand examples") {
  std::vector<int> all = idempotents(right_zero(4));
  CHECK(all == std::vector<int>{0, 1, 2, 3});

  CHECK(idempotents(cyclic(4)) == std::vector<int>{0});

  SemigroupTable null2{{{0, 0}, {0, 0}}};
  CHECK(idempotents(null2) == std::vector<int>{0});

  CHECK_THROWS_AS(idempotents(SemigroupTable{{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}}), std::invalid_argument);
}

TEST_CASE("minimal ideals of the hand examples") {
  // Right-zero: xS = S on the right, Sx = {x} on the left.
  SemigroupTable rz = right_zero(3);
  std::vector<std::vector<int>> rr = minimal_right_ideals(rz);
  REQUIRE(rr.size() == 1);
  CHECK(rr[0] == std::vector<int>{0, 1, 2});
  std::vector<std::vector<int>> rl = minimal_left_ideals(rz);
  REQUIRE(rl.size() == 3);
  CHECK(rl == std::vector<std::vector<int>>{{0}, {1}, {2}});

  // A group is its own unique ideal on both sides.
  CHECK(minimal_right_ideals(cyclic(4)) == std::vector<std::vector<int>>{{0, 1, 2, 3}});
  CHECK(minimal_left_ideals(cyclic(4)) == std::vector<std::vector<int>>{{0, 1, 2, 3}});

  // Null semigroup: the zero absorbs everything.
  SemigroupTable null2{{{0, 0}, {0, 0}}};
  CHECK(minimal_right_ideals(null2) == std::vector<std::vector<int>>{{0}});
  CHECK(minimal_left_ideals(null2) == std::vector<std::vector<int>>{{0}});

  // Mixed product: two ideals each side, singleton group intersections.
  SemigroupTable mix = mixed_product();
  std::vector<std::vector<int>> mr = minimal_right_ideals(mix);
  std::vector<std::vector<int>> ml = minimal_left_ideals(mix);
  CHECK(mr == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  CHECK(ml == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
  for (const auto& m : mr) {
    for (const auto& l : ml) {
      std::vector<int> inter;
      std::set_intersection(m.begin(), m.end(), l.begin(), l.end(), std::back_inserter(inter));
      REQUIRE(inter.size() == 1);
      CHECK(mix.mul(inter[0], inter[0]) == inter[0]);
    }
  }
}

TEST_CASE("minimal right ideals regenerate from any member") {
  for (const SemigroupTable& s :
       {right_zero(4), left_zero(3), cyclic(5), mixed_product(), SemigroupTable{{{0, 0}, {0, 0}}}}) {
    for (const auto& m : minimal_right_ideals(s)) {
      for (int x : m) {
        std::set<int> xs;
        for (int y = 0; y < s.size(); ++y) xs.insert(s.mul(x, y));
        CHECK(std::vector<int>(xs.begin(), xs.end()) == m);
      }
    }
  }
}

TEST_CASE("the kernel is a two-sided ideal and ideals cross-meet") {
  for (const SemigroupTable& s :
       {right_zero(4), left_zero(3), cyclic(5), mixed_product(), SemigroupTable{{{0, 0}, {0, 0}}}}) {
    std::set<int> kernel;
    std::vector<std::vector<int>> rights = minimal_right_ideals(s);
    for (const auto& m : rights) kernel.insert(m.begin(), m.end());
    for (int x : kernel)
      for (int y = 0; y < s.size(); ++y) {
        CHECK(kernel.count(s.mul(x, y)));
        CHECK(kernel.count(s.mul(y, x)));
      }
    for (const auto& m : rights) {
      for (const auto& l : minimal_left_ideals(s)) {
        std::vector<int> inter;
        std::set_intersection(m.begin(), m.end(), l.begin(), l.end(), std::back_inserter(inter));
        CHECK_FALSE(inter.empty());
      }
    }
  }
}

TEST_CASE("semifacts hold on the hand examples") {
  for (const SemigroupTable& s :
       {right_zero(3), left_zero(2), cyclic(4), mixed_product(), SemigroupTable{{{0, 0}, {0, 0}}}}) {
    SemifactsReport report = verify_semifacts(s);
    CHECK(report.clauses.size() == 5);
    CHECK(report.all_pass());
    for (const SemifactClause& c : report.clauses) CHECK(c.witness.empty());
  }
  CHECK_THROWS_AS(verify_semifacts(SemigroupTable{{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}}),
                  std::invalid_argument);
}

TEST_CASE("associative table counts match the known sequence") {
  CHECK(enumerate_semigroups(1).size() == 1);
  CHECK(enumerate_semigroups(2).size() == 8);
  CHECK(enumerate_semigroups(3).size() == 113);
  CHECK_THROWS_AS(enumerate_semigroups(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_semigroups(5), std::invalid_argument);
}

TEST_CASE("every associative table of size up to three passes the semifacts") {
  for (int n = 1; n <= 3; ++n) {
    for (const SemigroupTable& s : enumerate_semigroups(n)) {
      REQUIRE(check_associativity(s).associative);
      CHECK(verify_semifacts(s).all_pass());
    }
  }
}

TEST_CASE("sampled size-four tables pass the semifacts") {
  // A quick sample here; the acceptance gate runs the ten-thousand-table sweep.
  CHECK(enumerate_semigroups(4).size() == 3492);
  std::mt19937 rng(99);
  for (int i = 0; i < 500; ++i) {
    SemigroupTable s = sample_semigroup(4, rng);
    CHECK(verify_semifacts(s).all_pass());
  }
}

TEST_CASE("semigroup JSON round-trips") {
  SemigroupTable s = mixed_product();
  SemigroupTable back = SemigroupTable::from_json(s.to_json());
  CHECK(back.table == s.table);
  CHECK_THROWS_AS(SemigroupTable::from_json(nlohmann::json{{1, 2}, {3}}), std::invalid_argument);
  CHECK_THROWS_AS(SemigroupTable::from_json(nlohmann::json::parse("[[0,9],[0,0]]")), std::invalid_argument);
}
