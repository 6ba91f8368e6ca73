#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "plorbits/constructions.hpp"
#include "plorbits/forcing.hpp"

using namespace plorbits;
using plorbits::testing::q;
using plorbits::testing::unit;

namespace {

Orbit tent_orbit_7ths() {
    return orbit_from_points(tent(), {q("2/7"), q("4/7"), q("6/7")});
}

Orbit tent_orbit_9ths() {
    return orbit_from_points(tent(), {q("2/9"), q("4/9"), q("8/9")});
}

}  // namespace

TEST_CASE("orbit context of the 7ths orbit") {
    OrbitContext ctx = orbit_context(tent(), tent_orbit_7ths());
    CHECK(ctx.min_p == q("2/7"));
    CHECK(ctx.max_p == q("6/7"));
    CHECK(ctx.b == q("6/7"));
    CHECK(ctx.v == q("4/7"));  // the largest preimage of b, not 3/7
    CHECK(ctx.z == q("2/3"));
    CHECK(ctx.z0 == q("2/3"));
    CHECK(ctx.y == q("2/5"));
    CHECK(ctx.d == q("1/3"));
}

TEST_CASE("orbit context of the 9ths orbit") {
    PLMap t = tent();
    OrbitContext ctx = orbit_context(t, tent_orbit_9ths());
    CHECK(ctx.b == q("8/9"));
    CHECK(ctx.v == q("5/9"));
    CHECK(t(ctx.v) == ctx.b);
    CHECK(ctx.z == q("2/3"));
    CHECK(ctx.z0 == q("2/3"));
    CHECK(ctx.y == q("2/5"));
    CHECK(ctx.d == q("1/3"));
    CHECK(t(t(ctx.v)) == ctx.min_p);
}

TEST_CASE("orbit context rejects bad inputs") {
    PLMap t = tent();
    // Period-2 orbit: too short.
    CHECK_THROWS_AS(orbit_context(t, orbit_from_points(t, {q("2/5"), q("4/5")})),
                    MalformedOrbit);
    // An orbit of a different map.
    Orbit p = tent_orbit_7ths();
    CHECK_THROWS_AS(orbit_context(build_Tn(5), p), MalformedOrbit);
}

TEST_CASE("cover graph of a period-3 pattern") {
    CoverGraph g = cover_graph(tent_orbit_7ths());
    REQUIRE(g.intervals.size() == 2);
    CHECK(g.intervals[0] == Interval{q("2/7"), q("4/7")});
    CHECK(g.intervals[1] == Interval{q("4/7"), q("6/7")});
    CHECK(g.edges == std::set<std::pair<std::size_t, std::size_t>>{
                         {0, 1}, {1, 0}, {1, 1}});
    CHECK(cover_graph(tent_orbit_9ths()).edges == g.edges);
}

TEST_CASE("cover graph of a period-2 orbit is a self-loop") {
    PLMap t = tent();
    CoverGraph g = cover_graph(orbit_from_points(t, {q("2/5"), q("4/5")}));
    REQUIRE(g.intervals.size() == 1);
    CHECK(g.edges == std::set<std::pair<std::size_t, std::size_t>>{{0, 0}});
}

TEST_CASE("realized cycles on the 7ths orbit") {
    PLMap t = tent();
    Orbit p = tent_orbit_7ths();
    CHECK(realize_cycle(t, p, {1}) == q("2/3"));
    CHECK(realize_cycle(t, p, {0, 1}) == q("2/5"));
    Rational w = realize_cycle(t, p, {1, 1, 0});
    CHECK(w == q("4/7"));
    // Independent oracle: the returned period-3 point must belong to an
    // enumerated orbit and follow the walk's itinerary.
    bool member = false;
    for (const Orbit& o : enumerate_orbits(t, 3)) {
        if (o.contains(w)) member = true;
    }
    CHECK(member);
    CoverGraph g = cover_graph(p);
    Rational x = w;
    for (std::size_t idx : {1, 1, 0}) {
        CHECK(g.intervals[idx].contains(x));
        x = t(x);
    }
    CHECK(x == w);
}

TEST_CASE("walks are validated against the pattern") {
    PLMap t = tent();
    Orbit p = tent_orbit_7ths();
    CHECK_THROWS_AS(realize_cycle(t, p, {0, 0}), NotACycle);
    CHECK_THROWS_AS(realize_cycle(t, p, {}), NotACycle);
    CHECK_THROWS_AS(realize_cycle(t, p, {2}), NotACycle);
    CHECK_THROWS_AS(realize_cycle(t, p, {0}), NotACycle);
}

TEST_CASE("itineraries the map cannot cover fail loudly") {
    PLMap t = tent();
    CHECK_THROWS_AS(
        realize_itinerary(t, {Interval{q("0"), q("1/8")},
                              Interval{q("7/8"), q("1")}}),
        CoverageFailure);
}

TEST_CASE("realized cycles close exactly on every short walk") {
    PLMap t = tent();
    for (const Orbit& p : enumerate_orbits(t, 3)) {
        CoverGraph g = cover_graph(p);
        for (std::size_t len = 1; len <= 8; ++len) {
            for (const auto& walk : plorbits::testing::closed_walks(g, len)) {
                Rational x = realize_cycle(t, p, walk);
                Rational y = x;
                for (std::size_t k = 0; k < walk.size(); ++k) {
                    CHECK(g.intervals[walk[k]].contains(y));
                    y = t(y);
                }
                CHECK(y == x);
            }
        }
    }
}

TEST_CASE("even-period witnesses on both period-3 orbits") {
    PLMap t = tent();
    for (const Orbit& p : {tent_orbit_7ths(), tent_orbit_9ths()}) {
        for (unsigned n = 0; n <= 3; ++n) {
            const unsigned target = 2 * n + 2;
            Rational w = even_period_witness(t, p, n);
            CHECK(least_period(t, w, target) == target);
            bool member = false;
            for (const Orbit& o : enumerate_orbits(t, target)) {
                if (o.contains(w)) member = true;
            }
            CHECK(member);
        }
    }
    CHECK(even_period_witness(t, tent_orbit_7ths(), 0) == q("2/5"));
    CHECK(even_period_witness(t, tent_orbit_7ths(), 1) == q("10/17"));
    CHECK(even_period_witness(t, tent_orbit_7ths(), 2) == q("38/63"));
}

TEST_CASE("even-period witness rejects even orbits") {
    PLMap t = tent();
    Orbit p2 = orbit_from_points(t, {q("2/5"), q("4/5")});
    CHECK_THROWS_AS(even_period_witness(t, p2, 1), PreconditionViolated);
    Orbit p4 = orbit_of(t, q("2/17"), 4);
    CHECK_THROWS_AS(even_period_witness(t, p4, 1), PreconditionViolated);
}

TEST_CASE("unified witnesses on the 7ths orbit") {
    PLMap t = tent();
    UnifiedWitnesses w = unified_witnesses(t, tent_orbit_7ths(), 3);
    CHECK(w.y == q("2/5"));
    CHECK(least_period(t, w.y, 2) == 2);
    CHECK(w.p_m_plus_2 == q("14/33"));
    CHECK(least_period(t, w.p_m_plus_2, 5) == 5);
    CHECK(w.c.at(1) == q("2/5"));
    CHECK(w.c.at(2) == q("6/17"));
    CHECK(w.c.at(3) == q("22/65"));
    for (unsigned n = 1; n <= 3; ++n) {
        CHECK(least_period(t, w.c.at(n), 2 * n) == 2 * n);
    }
    // Exact strict chain d < c6 < c4 < c2 <= y.
    CHECK(q("1/3") < w.c.at(3));
    CHECK(w.c.at(3) < w.c.at(2));
    CHECK(w.c.at(2) < w.c.at(1));
    CHECK(w.c.at(1) <= w.y);
}

TEST_CASE("unified witnesses on the 9ths orbit") {
    PLMap t = tent();
    UnifiedWitnesses w = unified_witnesses(t, tent_orbit_9ths(), 4);
    CHECK(least_period(t, w.y, 2) == 2);
    CHECK(least_period(t, w.p_m_plus_2, 5) == 5);
    Rational prev = q("1/3");  // d for this orbit
    for (unsigned n = 4; n >= 1; --n) {
        CHECK(least_period(t, w.c.at(n), 2 * n) == 2 * n);
        CHECK(prev < w.c.at(n));
        prev = w.c.at(n);
    }
}

TEST_CASE("lemma 1 witnesses, mirrored orientation") {
    PLMap t = tent();
    Lemma1Witness w = lemma1_witnesses(t, q("1/2"), q("0"), 2, 8);
    CHECK(w.orientation == Lemma1Orientation::Mirrored);
    CHECK(w.z == q("0"));
    CHECK(w.d == q("1"));
    for (unsigned n = 1; n <= 8; ++n) {
        // p_n = 2^n / (2^n + 1), the first solution of T^n(x) = 1 - x.
        CHECK(w.p.at(n) == Rational(Integer(1) << n, (Integer(1) << n) + 1));
        CHECK(least_period(t, w.p.at(n), n) == n);
        CHECK(std::min(w.d, w.z) <= w.p.at(n));
        CHECK(w.p.at(n) <= std::max(w.d, w.z));
    }
}

TEST_CASE("lemma 1 witnesses, direct orientation") {
    // The second iterate of the tent map with v from the 7ths context:
    // T^2(v) < v < z <= T^4(v).
    PLMap square = iterate_map(tent(), 2);
    Lemma1Witness w = lemma1_witnesses(square, q("4/7"), q("2/3"), 2, 6);
    CHECK(w.orientation == Lemma1Orientation::Direct);
    for (unsigned n = 1; n <= 6; ++n) {
        CHECK(least_period(square, w.p.at(n), n) == n);
        CHECK(w.d <= w.p.at(n));
        CHECK(w.p.at(n) <= w.z);
    }
}

TEST_CASE("lemma 1 preconditions are verified exactly") {
    PLMap t = tent();
    CHECK_THROWS_AS(lemma1_witnesses(t, q("1/2"), q("2/3"), 2, 3),
                    PreconditionViolated);
    // v a fixed point contradicts both orientations.
    CHECK_THROWS_AS(lemma1_witnesses(t, q("2/3"), q("2/3"), 2, 3),
                    PreconditionViolated);
    // z must be exactly fixed.
    CHECK_THROWS_AS(lemma1_witnesses(t, q("1/2"), q("1/3"), 2, 3),
                    PreconditionViolated);
}

TEST_CASE("witnesses on truncated maps") {
    // The machinery is not tent-specific: the truncated map T_5 and its
    // Stefan orbit produce the same families.
    PLMap t5 = build_Tn(5);
    Orbit p = minimal_orbit(t5, 5);
    CHECK(p.points() == std::vector<Rational>{q("10/31"), q("18/31"),
                                              q("20/31"), q("22/31"),
                                              q("26/31")});
    UnifiedWitnesses uw = unified_witnesses(t5, p, 2);
    CHECK(least_period(t5, uw.y, 2) == 2);
    CHECK(uw.p_m_plus_2 == q("18/43"));
    CHECK(least_period(t5, uw.p_m_plus_2, 7) == 7);
    for (unsigned n = 0; n <= 3; ++n) {
        unsigned target = 2 * n + 2;
        CHECK(least_period(t5, even_period_witness(t5, p, n), target) ==
              target);
    }
}

TEST_CASE("tail property of familiar maps") {
    TailReport tent_report = verify_tail_property(tent(), 8);
    CHECK(tent_report.periods ==
          std::set<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(tent_report.is_tail);

    PLMap ident(unit(), {Node{q("0"), q("0")}, Node{q("1"), q("1")}});
    TailReport ident_report = verify_tail_property(ident, 10);
    CHECK(ident_report.periods == std::set<std::uint64_t>{1});
    CHECK(ident_report.is_tail);

    TailReport t5 = verify_tail_property(build_Tn(5), 10);
    CHECK(t5.periods == tail(5, 10));
    CHECK(t5.is_tail);
}
