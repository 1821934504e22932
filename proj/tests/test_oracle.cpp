#include <catch2/catch_amalgamated.hpp>

#include "l1geo/fixtures.hpp"
#include "l1geo/oracle.hpp"
#include "l1geo/visgraph.hpp"

using namespace l1geo;

TEST_CASE("oracle: convex domains give the plain l1 distance") {
    auto P = fixtures::rectangle(7, 3);
    auto pts = sample_points(P, 12, 99);
    TrackGraph g(P, pts);
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            CHECK(g.distance(pts[i], pts[j]) == l1_dist(pts[i], pts[j]));
}

TEST_CASE("oracle: HOLE1 detour") {
    auto P = fixtures::hole1();
    CHECK(oracle_dist(P, Pt(5, 0), Pt(5, 10)) == Rat(12));
}

TEST_CASE("oracle: node count stays quadratic") {
    auto P = perturb_general_position(fixtures::hole1());
    auto pts = sample_points(P, 10, 3);
    TrackGraph g(P, pts);
    size_t n = P.vertex_count() + pts.size();
    CHECK(g.node_count() <= 8 * (n + 2) * (n + 2));
}

TEST_CASE("sample_points: deterministic, in-domain, outside holes") {
    auto P = fixtures::hole1();
    auto a = sample_points(P, 1000, 7);
    auto b = sample_points(P, 1000, 7);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    Ring hole = P.holes()[0];
    for (auto& p : a) {
        CHECK(P.contains(p));
        CHECK(point_in_ring(p, hole) != Side::In);
    }
    auto c = sample_points(P, 50, 8);
    bool differs = false;
    for (size_t i = 0; i < c.size() && i < a.size(); ++i)
        if (!(c[i] == a[i])) differs = true;
    CHECK(differs);
}

TEST_CASE("mutual validation: oracle and engine agree exactly") {
    for (auto make : {fixtures::hole1, fixtures::canal1, fixtures::l_shape}) {
        auto P = perturb_general_position(make());
        auto pts = sample_points(P, 18, 11);
        TrackGraph oracle(P, pts);
        DistanceEngine engine(Environment::from_domain(P));
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                CHECK(oracle.distance(pts[i], pts[j]) == engine.distance(pts[i], pts[j]));
    }
}
