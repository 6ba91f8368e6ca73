#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "plorbits/constructions.hpp"
#include "plorbits/io.hpp"

using namespace plorbits;
using plorbits::testing::q;

TEST_CASE("map serialization is canonical") {
    CHECK(to_json(tent()).dump() ==
          R"({"domain":["0","1"],"nodes":[["0","0"],["1/2","1"],["1","0"]]})");
}

TEST_CASE("maps round-trip through JSON") {
    std::mt19937 rng(23);
    for (int i = 0; i < 50; ++i) {
        PLMap m = plorbits::testing::random_plmap(rng);
        CHECK(plmap_from_json(to_json(m)) == m);
    }
    CHECK(parse_plmap(to_json(tent()).dump()) == tent());
}

TEST_CASE("orbit serialization") {
    Orbit p = orbit_from_points(tent(), {q("2/7"), q("4/7"), q("6/7")});
    nlohmann::json j = to_json(p);
    CHECK(j["points"] == nlohmann::json({"2/7", "4/7", "6/7"}));
    CHECK(j["successor"] == nlohmann::json({1, 2, 0}));
    CHECK(j["period"] == 3);
}

TEST_CASE("parse rejections carry positions") {
    auto expect_where = [](const char* text, const std::string& where) {
        try {
            parse_plmap(text);
            FAIL("expected ParseError for " << text);
        } catch (const ParseError& e) {
            CHECK(e.where() == where);
        }
    };

    // Non-canonical rational.
    expect_where(
        R"({"domain":["0","1"],"nodes":[["0","0"],["2/4","1"],["1","0"]]})",
        "map.nodes[1][0]");
    // Out-of-order nodes.
    expect_where(
        R"({"domain":["0","1"],"nodes":[["0","0"],["1/2","1"],["1/3","1"],["1","0"]]})",
        "map.nodes[2][0]");
    // Value outside the domain.
    expect_where(
        R"({"domain":["0","1"],"nodes":[["0","0"],["1/2","3/2"],["1","0"]]})",
        "map.nodes[1][1]");
    // Nodes not spanning the domain.
    expect_where(R"({"domain":["0","1"],"nodes":[["0","0"],["1/2","1"]]})",
                 "map.nodes");
    // Degenerate domain.
    expect_where(R"({"domain":["1","1"],"nodes":[["1","1"],["2","1"]]})",
                 "map.domain");
    // Wrong types.
    expect_where(R"({"domain":["0","1"],"nodes":[[0,0],[1,0]]})",
                 "map.nodes[0][0]");
    expect_where(R"([1,2,3])", "map");

    // Malformed JSON carries the byte offset.
    try {
        parse_plmap(R"({"domain": ["0", "1"], )");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.where().find("byte") != std::string::npos);
    }
}

TEST_CASE("rational lists") {
    auto pts = parse_rational_list("2/7,4/7,6/7");
    REQUIRE(pts.size() == 3);
    CHECK(pts[1] == q("4/7"));
    CHECK_THROWS_AS(parse_rational_list("2/7,,6/7"), ParseError);
    CHECK_THROWS_AS(parse_rational_list("2/7,0.5"), ParseError);
}
