#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "l1geo/domain.hpp"
#include "l1geo/fixtures.hpp"
#include "l1geo/geom.hpp"
#include "l1geo/rational.hpp"

using namespace l1geo;

namespace {

Pt random_point(std::mt19937_64& rng, long range = 100, long den = 8) {
    std::uniform_int_distribution<long> d(-range * den, range * den);
    return Pt(rat(d(rng), den), rat(d(rng), den));
}

PolyPath random_staircase(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> steps(1, 12), len(0, 20);
    std::uniform_int_distribution<int> sgn(0, 1);
    int sx = sgn(rng) ? 1 : -1, sy = sgn(rng) ? 1 : -1;
    PolyPath p{random_point(rng)};
    int k = (int)steps(rng);
    for (int i = 0; i < k; ++i) {
        Pt q = p.back();
        Rat dx = rat(sx * len(rng), 4), dy = rat(sy * len(rng), 4);
        if (dx == 0 && dy == 0) dx = rat(sx, 4);
        p.push_back(Pt(q.x + dx, q.y + dy));
    }
    return p;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(rat_parse("3.25") == Rat(13, 4));
    CHECK(rat_parse("-0.5") == Rat(-1, 2));
    CHECK(rat_parse("42") == Rat(42));
    CHECK(rat_parse("3/8") == Rat(3, 8));
    CHECK(rat_parse("-7/2") == Rat(-7, 2));
    CHECK(rat_fraction_string(Rat(5, 3)) == "5/3");
    CHECK(rat_decimal_string(Rat(1, 2)) == "0.5");
    CHECK(rat_decimal_string(Rat(1, 3)) == "0.333333333333");
    CHECK(rat_decimal_string(Rat(-13, 4)) == "-3.25");
    CHECK(rat_decimal_string(Rat(2)) == "2");
    CHECK_THROWS(rat_parse("1.2.3"));
}

TEST_CASE("l1 distance definition") {
    CHECK(l1_dist(Pt(0, 0), Pt(1, 1)) == Rat(2));
    CHECK(l1_dist(Pt(3, 5), Pt(3, 5)) == Rat(0));
    CHECK(l1_dist(Pt(-2, 7), Pt(1, 3)) == Rat(7));
}

TEST_CASE("l1 distance is a metric") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        Pt a = random_point(rng), b = random_point(rng), c = random_point(rng);
        CHECK(l1_dist(a, b) == l1_dist(b, a));
        CHECK((l1_dist(a, b) == 0) == (a == b));
        CHECK(l1_dist(a, c) <= l1_dist(a, b) + l1_dist(b, c));
    }
}

TEST_CASE("path length") {
    CHECK(path_l1_length({Pt(0, 0)}) == Rat(0));
    CHECK(path_l1_length({Pt(0, 0), Pt(1, 0), Pt(1, 1)}) == Rat(2));
    CHECK(path_l1_length({Pt(0, 0), Pt(1, 0), Pt(0, 0)}) == Rat(2));
}

TEST_CASE("monotone staircase test") {
    CHECK(is_monotone({Pt(0, 0), Pt(1, 0), Pt(1, 1)}));
    CHECK_FALSE(is_monotone({Pt(0, 0), Pt(2, 0), Pt(1, 1)}));
    CHECK(is_monotone({Pt(0, 0), Pt(0, 1), Pt(1, 1), Pt(1, 2)}));
}

TEST_CASE("monotone paths realize the l1 distance") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 1000; ++i) {
        PolyPath p = random_staircase(rng);
        REQUIRE(is_monotone(p));
        CHECK(path_l1_length(p) == l1_dist(p.front(), p.back()));
    }
}

TEST_CASE("segment predicates") {
    CHECK(segments_properly_cross(Pt(0, 0), Pt(2, 2), Pt(0, 2), Pt(2, 0)));
    CHECK_FALSE(segments_properly_cross(Pt(0, 0), Pt(2, 2), Pt(1, 1), Pt(3, 0)));
    CHECK(segments_intersect(Pt(0, 0), Pt(2, 2), Pt(1, 1), Pt(3, 0)));
    CHECK_FALSE(segments_intersect(Pt(0, 0), Pt(1, 0), Pt(0, 1), Pt(1, 1)));
    auto pts = segment_intersection_points(Pt(0, 0), Pt(4, 0), Pt(1, 0), Pt(6, 0));
    REQUIRE(pts.size() == 2);  // overlap endpoints
}

TEST_CASE("point in ring") {
    Ring sq{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    CHECK(point_in_ring(Pt(5, 5), sq) == Side::In);
    CHECK(point_in_ring(Pt(0, 5), sq) == Side::Boundary);
    CHECK(point_in_ring(Pt(-1, 5), sq) == Side::Out);
    CHECK(point_in_ring(Pt(10, 10), sq) == Side::Boundary);
    CHECK(point_in_ring(Pt(11, 10), sq) == Side::Out);
}

TEST_CASE("domain validation accepts the basic fixtures") {
    auto rep = validate_domain(fixtures::unit_square());
    CHECK(rep.accepted);
    CHECK_FALSE(rep.general_position);  // shared coordinates
    CHECK_FALSE(rep.warnings.empty());

    auto rep1 = validate_domain(fixtures::hole1());
    CHECK(rep1.accepted);
    CHECK_FALSE(rep1.general_position);

    CHECK(validate_domain(fixtures::twohole()).accepted);
    CHECK(validate_domain(fixtures::canal1()).accepted);
    CHECK(validate_domain(fixtures::l_shape()).accepted);
}

TEST_CASE("domain validation rejects structural errors") {
    // hole crossing the outer boundary
    auto bad = PolygonalDomain::from_rings({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                           {{{8, 4}, {12, 4}, {12, 6}, {8, 6}}});
    CHECK_FALSE(validate_domain(bad).accepted);

    // self-intersecting outer ring
    auto bow = PolygonalDomain::from_rings({{0, 0}, {4, 4}, {4, 0}, {0, 4}}, {});
    CHECK_FALSE(validate_domain(bow).accepted);

    // pinched ring (repeated vertex)
    auto pinch = PolygonalDomain::from_rings(
        {{0, 0}, {4, 0}, {4, 4}, {2, 2}, {0, 4}, {2, 2}}, {});
    CHECK_FALSE(validate_domain(pinch).accepted);

    // overlapping holes
    auto overlap = PolygonalDomain::from_rings(
        {{0, 0}, {10, 0}, {10, 10}, {0, 10}},
        {{{2, 2}, {6, 2}, {6, 6}, {2, 6}}, {{4, 4}, {8, 4}, {8, 8}, {4, 8}}});
    CHECK_FALSE(validate_domain(overlap).accepted);
}

TEST_CASE("general position perturbation") {
    for (auto make : {fixtures::unit_square, fixtures::hole1, fixtures::twohole,
                      fixtures::canal1, fixtures::l_shape}) {
        PolygonalDomain d = make();
        PolygonalDomain p = perturb_general_position(d);
        auto rep = validate_domain(p);
        CHECK(rep.accepted);
        CHECK(rep.general_position);
        CHECK(p.hole_count() == d.hole_count());
        CHECK(p.vertex_count() == d.vertex_count());
        for (int r = 0; r < p.ring_count(); ++r) CHECK(p.ring(r).size() == d.ring(r).size());
    }
}

TEST_CASE("contains_segment") {
    auto d = fixtures::hole1();
    CHECK(d.contains_segment(Pt(1, 1), Pt(9, 1)));
    CHECK_FALSE(d.contains_segment(Pt(1, 5), Pt(9, 5)));  // crosses the hole
    CHECK(d.contains_segment(Pt(4, 4), Pt(6, 4)));        // grazes the hole edge
    CHECK(d.contains_segment(Pt(0, 0), Pt(10, 0)));       // along the boundary
}

TEST_CASE("inside intervals across a hole") {
    auto d = fixtures::hole1();
    auto iv = d.inside_intervals_h(Rat(5));
    REQUIRE(iv.size() == 2);
    CHECK(iv[0].first == Rat(0));
    CHECK(iv[0].second == Rat(4));
    CHECK(iv[1].first == Rat(6));
    CHECK(iv[1].second == Rat(10));
    auto iv2 = d.inside_intervals_h(Rat(1));
    REQUIRE(iv2.size() == 1);
    CHECK(iv2[0].first == Rat(0));
    CHECK(iv2[0].second == Rat(10));
}

TEST_CASE("fixture generators produce valid GP domains") {
    for (const char* kind : {"random-holes", "pinch", "comb"}) {
        for (unsigned long seed : {1UL, 2UL, 3UL}) {
            PolygonalDomain d = fixtures::generate(kind, 18, 2, seed);
            auto rep = validate_domain(d);
            CHECK(rep.accepted);
            CHECK(rep.general_position);
            CHECK(d.vertex_count() <= 60);
            CHECK(d.hole_count() <= 4);
        }
    }
    // determinism
    PolygonalDomain a = fixtures::generate("random-holes", 18, 2, 11);
    PolygonalDomain b = fixtures::generate("random-holes", 18, 2, 11);
    REQUIRE(a.vertex_count() == b.vertex_count());
    for (size_t i = 0; i < a.vertices().size(); ++i) CHECK(a.vertices()[i] == b.vertices()[i]);
}
