#include "doctest.h"

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "brw/structure.hpp"

using namespace brw;

TEST_CASE("language validates symbol lists") {
  CHECK_NOTHROW(Language({{"<", 2}, {"R", 4}}));
  CHECK_THROWS_AS(Language({{"<", 2}, {"<", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Language({{"E", 0}}), std::invalid_argument);
  Language l({{"E", 2}, {"<", 2}});
  CHECK(l.index_of("E") == 0);
  CHECK(l.index_of("<") == 1);
  CHECK(l.index_of("R") == -1);
}

TEST_CASE("language extension is order-independent subset") {
  Language base({{"E", 2}});
  Language big({{"<", 2}, {"E", 2}, {"R", 4}});
  CHECK(big.extends(base));
  CHECK(!base.extends(big));
  CHECK(base.extends(base));
  // Same name, different arity is a different symbol.
  Language clash({{"E", 3}, {"<", 2}});
  CHECK(!clash.extends(base));
}

TEST_CASE("structures hold exactly the added tuples") {
  Structure s(Language({{"E", 2}}), 3);
  s.add("E", {0, 1});
  s.add("E", {0, 1});  // duplicates collapse
  CHECK(s.holds("E", {0, 1}));
  CHECK(!s.holds("E", {1, 0}));
  CHECK(s.tuples("E").size() == 1);
  CHECK_THROWS_AS(s.add("E", {0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(s.add("E", {0}), std::invalid_argument);
  CHECK_THROWS_AS(s.add("F", {0, 1}), std::invalid_argument);
}

TEST_CASE("induced substructure pulls relations back along the map") {
  Structure chain = make_chain(3);
  SUBCASE("identity gives the structure back") {
    Structure same = chain.induced({0, 1, 2});
    CHECK(same == chain);
  }
  SUBCASE("reversing picks up the reversed order") {
    // Map 0 -> 2, 1 -> 0: in the image, 0 < 2 in the chain, so the pulled
    // back order has 1 < 0.
    Structure two = chain.induced({2, 0});
    CHECK(two.size() == 2);
    CHECK(two.holds("<", {1, 0}));
    CHECK(!two.holds("<", {0, 1}));
  }
  SUBCASE("non-injective maps are rejected") {
    CHECK_THROWS_AS(chain.induced({0, 0}), std::invalid_argument);
  }
}

TEST_CASE("induced substructure of a triangle is an edge") {
  Structure tri = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  Structure e = tri.induced({0, 2});
  CHECK(e.holds("E", {0, 1}));
  CHECK(e.holds("E", {1, 0}));
  CHECK(e.tuples("E").size() == 2);
}

TEST_CASE("reduct drops interpretations and nothing else") {
  Structure s(Language({{"<", 2}, {"R", 4}}), 2);
  s.add("<", {0, 1});
  s.add("R", {0, 0, 1, 1});
  Structure r = s.reduct(Language({{"<", 2}}));
  CHECK(r.language().size() == 1);
  CHECK(r.holds("<", {0, 1}));
  CHECK_THROWS_AS(s.reduct(Language({{"missing", 1}})), std::invalid_argument);
}

TEST_CASE("JSON round trip is exact") {
  Structure s(Language({{"E", 2}, {"P0", 1}}), 3);
  s.add("E", {0, 1});
  s.add("E", {1, 0});
  s.add("P0", {2});
  Structure back = Structure::from_json(s.to_json());
  CHECK(back == s);

  SUBCASE("malformed documents are rejected") {
    CHECK_THROWS_AS(Structure::from_json(nlohmann::json::parse("{\"size\": 2}")),
                    std::invalid_argument);
    // Tuple out of range.
    CHECK_THROWS_AS(
        Structure::from_json(nlohmann::json::parse(
            R"({"language":[{"name":"E","arity":2}],"size":2,"relations":{"E":[[0,5]]}})")),
        std::invalid_argument);
  }
}

TEST_CASE("encode distinguishes structures and is deterministic") {
  Structure a = make_chain(3);
  Structure b = make_chain(3);
  CHECK(a.encode() == b.encode());
  Structure c(a.language(), 3);
  c.add("<", {0, 1});
  CHECK(a.encode() != c.encode());
}

TEST_CASE("builders produce the advertised shapes") {
  Structure g = make_graph(4, {{0, 1}, {2, 3}});
  CHECK(g.holds("E", {1, 0}));
  CHECK(g.tuples("E").size() == 4);
  Structure t = make_tournament(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(t.holds("E", {2, 0}));
  CHECK(!t.holds("E", {0, 2}));
  Structure e = make_edgeless(3);
  CHECK(e.language().size() == 0);
  CHECK(e.size() == 3);
}
