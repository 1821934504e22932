#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "l1geo/corridor.hpp"
#include "l1geo/fixtures.hpp"
#include "l1geo/funnel.hpp"
#include "l1geo/visgraph.hpp"

using namespace l1geo;

TEST_CASE("engine basics on convex and simple domains") {
    DistanceEngine eng(Environment::from_domain(fixtures::unit_square()));
    CHECK(eng.distance(Pt(0, 0), Pt(1, 1)) == Rat(2));
    CHECK(eng.distance(Pt(Rat(1, 2), Rat(1, 2)), Pt(Rat(1, 2), Rat(1, 2))) == Rat(0));

    DistanceEngine lshape(Environment::from_domain(fixtures::l_shape()));
    CHECK(lshape.distance(Pt(2, 0), Pt(0, 2)) == Rat(4));  // staircase through (1,1)
}

TEST_CASE("engine routes around a hole") {
    DistanceEngine eng(Environment::from_domain(fixtures::hole1()));
    // (5,0) -> (5,10): must detour around [4,6]^2: 10 + 2 backtrack
    CHECK(eng.distance(Pt(5, 0), Pt(5, 10)) == Rat(12));
    auto [dist, path] = eng.distance_with_path(Pt(5, 0), Pt(5, 10));
    CHECK(dist == Rat(12));
    CHECK(path.front() == Pt(5, 0));
    CHECK(path.back() == Pt(5, 10));
    CHECK(path_l1_length(path) == dist);
    // no edge crosses the hole interior
    for (size_t i = 0; i + 1 < path.size(); ++i)
        CHECK(fixtures::hole1().contains_segment(path[i], path[i + 1]));
}

TEST_CASE("engine distance >= l1 with equality iff monotone witness") {
    std::mt19937_64 rng(3);
    DistanceEngine eng(Environment::from_domain(fixtures::hole1()));
    std::uniform_int_distribution<long> c(0, 40);
    int checked = 0;
    while (checked < 60) {
        Pt s(rat(c(rng), 4), rat(c(rng), 4)), t(rat(c(rng), 4), rat(c(rng), 4));
        if (!fixtures::hole1().contains(s) || !fixtures::hole1().contains(t)) continue;
        ++checked;
        Rat d = eng.distance(s, t);
        CHECK(d >= l1_dist(s, t));
        if (fixtures::hole1().contains_segment(s, t)) CHECK(d == l1_dist(s, t));
    }
}

TEST_CASE("simple polygon geodesics: convex and L-shape") {
    SimplePolygonGeodesics conv({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
    auto p = conv.shortest_path(Pt(1, 1), Pt(3, 2));
    REQUIRE(p.size() == 2);

    // the geodesic grazes the reflex corner (1,1); it may or may not be
    // listed as a path vertex
    SimplePolygonGeodesics ell({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    auto q = ell.shortest_path(Pt(2, 0), Pt(0, 2));
    CHECK(path_l1_length(q) == Rat(4));
    for (auto& v : q) CHECK(point_in_ring(v, ell.ring()) != Side::Out);
}

TEST_CASE("simple polygon geodesics agree with a visibility-graph engine") {
    // random-ish nonconvex polygon
    Ring poly{{0, 0}, {8, 0}, {8, 3}, {5, 3}, {5, 5}, {8, 5}, {8, 8},
              {3, 8}, {3, 6}, {1, 6}, {1, 4}, {4, 4}, {4, 2}, {0, 2}};
    SimplePolygonGeodesics geo(poly);
    Environment env;
    env.outer = poly;
    DistanceEngine eng(env);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> c(0, 32);
    int checked = 0;
    while (checked < 40) {
        Pt s(rat(c(rng), 4), rat(c(rng), 4)), t(rat(c(rng), 4), rat(c(rng), 4));
        if (point_in_ring(s, poly) == Side::Out || point_in_ring(t, poly) == Side::Out) continue;
        ++checked;
        CHECK(geo.l1_length(s, t) == eng.distance(s, t));
    }
}

TEST_CASE("gate distance function matches pointwise geodesics") {
    Ring poly{{0, 0}, {8, 0}, {8, 3}, {5, 3}, {5, 5}, {8, 5}, {8, 8},
              {3, 8}, {3, 6}, {1, 6}, {1, 4}, {4, 4}, {4, 2}, {0, 2}};
    SimplePolygonGeodesics geo(poly);
    Seg gate(Pt(8, 5), Pt(8, 8));  // an edge of the polygon
    for (Pt v : {Pt(0, 0), Pt(1, 5), Pt(4, 2), Pt(8, 3)}) {
        GateDistFn f = geo.gate_distance_function(v, gate);
        for (long num = 0; num <= 50; ++num) {
            Rat t(num, 50);
            Pt x = f.point_at(t);
            CHECK(f.eval(t) == geo.l1_length(v, x));
        }
    }
}

TEST_CASE("funnel to edge: chains, apex, and extremes") {
    Ring poly{{0, 0}, {8, 0}, {8, 3}, {5, 3}, {5, 5}, {8, 5}, {8, 8},
              {3, 8}, {3, 6}, {1, 6}, {1, 4}, {4, 4}, {4, 2}, {0, 2}};
    SimplePolygonGeodesics geo(poly);
    Funnel f = geo.funnel_to_edge(Pt(0, 0), Seg(Pt(8, 5), Pt(8, 8)));
    CHECK(f.chain_a.front() == f.apex);
    CHECK(f.chain_b.front() == f.apex);
    CHECK(f.chain_a.back() == Pt(8, 5));
    CHECK(f.chain_b.back() == Pt(8, 8));
    CHECK(f.prefix.front() == Pt(0, 0));
    CHECK(f.prefix.back() == f.apex);
}

TEST_CASE("wall semantics: corridor paths block crossings but allow hugging") {
    Environment env;
    env.outer = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    env.walls.push_back({Pt(5, 2), Pt(5, 8)});
    DistanceEngine eng(env);
    // crossing the wall forbidden: detour around an endpoint
    CHECK(eng.distance(Pt(3, 5), Pt(7, 5)) == Rat(10));
    // endpoints reachable, hugging allowed
    CHECK(eng.distance(Pt(3, 5), Pt(5, 8)) == Rat(5));
    CHECK(eng.distance(Pt(5, 2), Pt(5, 8)) == Rat(6));
}

TEST_CASE("shortcut edges carry corridor-path weights") {
    Environment env;
    env.outer = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    env.walls.push_back({Pt(2, 5), Pt(5, 5), Pt(8, 5)});
    env.shortcuts.push_back({{Pt(2, 5), Pt(8, 5)}, Rat(6)});
    DistanceEngine eng(env);
    CHECK(eng.distance(Pt(2, 5), Pt(8, 5)) == Rat(6));
}

TEST_CASE("core environment preserves ocean distances (spot check)") {
    auto d = fixtures::canal1();
    auto S = build_corridor_structure(d);
    DistanceEngine full(Environment::from_domain(d));
    DistanceEngine core(S.ocean.core_environment(d.outer()));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> c(0, 80);
    int checked = 0;
    while (checked < 25) {
        Pt s(rat(c(rng), 4), rat(c(rng), 4)), t(rat(c(rng), 4), rat(c(rng), 4));
        if (!S.in_ocean(s, d) || !S.in_ocean(t, d)) continue;
        ++checked;
        CHECK(core.distance(s, t) == full.distance(s, t));
    }
}
