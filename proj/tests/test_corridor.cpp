#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "l1geo/corridor.hpp"
#include "l1geo/fixtures.hpp"

using namespace l1geo;

namespace {

Rat triangulation_area2(const Triangulation& T) {
    Rat acc(0);
    for (auto& t : T.tris) acc += ring_signed_area2({t.a, t.b, t.c});
    return acc;
}

}  // namespace

TEST_CASE("triangulation of a convex quad") {
    auto d = fixtures::unit_square();
    auto T = triangulate_domain(d);
    CHECK(T.tris.size() == 2);
    CHECK(triangulation_area2(T) == d.area2());
}

TEST_CASE("triangulation counts and area for fixtures") {
    for (auto make : {fixtures::hole1, fixtures::twohole, fixtures::canal1, fixtures::l_shape}) {
        PolygonalDomain d = perturb_general_position(make());
        auto T = triangulate_domain(d);
        size_t n = d.vertex_count(), h = d.hole_count();
        CHECK(T.tris.size() == n + 2 * h - 2);
        CHECK(triangulation_area2(T) == d.area2());
        for (auto& t : T.tris) CHECK(orient(t.a, t.b, t.c) > 0);
    }
}

TEST_CASE("triangulation of random GP domains avoids holes") {
    for (unsigned long seed : {4UL, 5UL, 6UL}) {
        PolygonalDomain d = fixtures::generate("random-holes", 16, 2, seed);
        auto T = triangulate_domain(d);
        CHECK(triangulation_area2(T) == d.area2());
        for (auto& t : T.tris) {
            Pt c = t.centroid();
            CHECK(d.locate_point(c) == Side::In);
        }
    }
}

TEST_CASE("corridor graph: h = 0 is empty") {
    auto S = build_corridor_structure(perturb_general_position(fixtures::l_shape()));
    CHECK(S.corridors.empty());
    CHECK(S.pockets.empty());
    // ocean covers the whole domain
    auto d = perturb_general_position(fixtures::l_shape());
    CHECK(rat_abs(ring_signed_area2(S.ocean.outer)) == d.area2());
}

TEST_CASE("corridor graph: h = 1 single loop") {
    auto d = perturb_general_position(fixtures::hole1());
    auto S = build_corridor_structure(d);
    REQUIRE(S.junctions.size() >= 1);
    // each corridor is a self-loop or joins two junctions; counts O(h)
    CHECK(S.junctions.size() <= 2);
    CHECK(S.corridors.size() <= 3);
}

TEST_CASE("corridor graph: 3-regularity for h >= 2") {
    for (auto make : {fixtures::twohole, fixtures::canal1}) {
        auto d = perturb_general_position(make());
        auto S = build_corridor_structure(d);
        std::map<int, int> deg;
        for (auto& c : S.corridors) {
            deg[c.junction1]++;
            deg[c.junction2]++;
        }
        for (int j : S.junctions) CHECK(deg[j] == 3);
        CHECK(S.junctions.size() == 2 * (d.hole_count() - 1));
        CHECK(S.corridors.size() == 3 * (d.hole_count() - 1));
    }
}

TEST_CASE("area partition: ocean + pockets = domain") {
    for (auto make : {fixtures::hole1, fixtures::twohole, fixtures::canal1}) {
        auto d = perturb_general_position(make());
        auto S = build_corridor_structure(d);
        Rat acc = rat_abs(ring_signed_area2(S.ocean.outer));
        for (auto& isl : S.ocean.islands) acc -= rat_abs(ring_signed_area2(isl));
        for (auto& pk : S.pockets) acc += rat_abs(ring_signed_area2(pk.ring));
        CHECK(acc == d.area2());
    }
}

TEST_CASE("canal fixture has a closed hourglass with a canal") {
    auto d = fixtures::canal1();  // exact coordinates, no perturbation
    auto S = build_corridor_structure(d);
    int closed = 0;
    for (auto& H : S.hourglasses)
        if (H.corridor >= 0 && !H.open && !H.corridor_path.empty()) closed++;
    CHECK(closed >= 1);
    // exactly one canal runs between the two holes, around the strait
    int strait_canals = 0;
    for (auto& pk : S.pockets) {
        if (pk.kind == Pocket::Kind::Bay) {
            CHECK(pk.gates.size() == 1);
            CHECK(pk.facing.size() == 1);
            continue;
        }
        REQUIRE(pk.gates.size() == 2);
        CHECK(pk.facing.size() == 2);
        const Hourglass& H = S.hourglasses[pk.corridor];
        REQUIRE_FALSE(H.open);
        // the canal contains its corridor path, gates are xd / yc
        for (auto& p : H.corridor_path) CHECK(point_in_ring(p, pk.ring) != Side::Out);
        for (auto& g : pk.gates) {
            bool has_terminal = (g.a == H.terminal_x || g.b == H.terminal_x ||
                                 g.a == H.terminal_y || g.b == H.terminal_y);
            CHECK(has_terminal);
        }
        std::set<Pt> cp(H.corridor_path.begin(), H.corridor_path.end());
        if (cp.count(Pt(8, 4)) && cp.count(Pt(11, 6))) strait_canals++;
    }
    CHECK(strait_canals == 1);
}

TEST_CASE("rectangle-strip corridors have open hourglasses and no bays") {
    // two square holes in a long box: corridors are plain strips
    auto d = perturb_general_position(fixtures::twohole());
    auto S = build_corridor_structure(d);
    for (auto& H : S.hourglasses) {
        if (H.corridor < 0 || S.corridors[H.corridor].tris.empty()) continue;
        if (H.open) {
            // open: side chains must be disjoint
            std::set<Pt> ab(H.side_ab.begin(), H.side_ab.end());
            for (auto& p : H.side_ef) CHECK(ab.count(p) == 0);
        }
    }
}

TEST_CASE("cores are convex subsets of their pieces") {
    for (auto make : {fixtures::hole1, fixtures::twohole, fixtures::canal1}) {
        auto d = perturb_general_position(make());
        auto S = build_corridor_structure(d);
        for (auto& piece : S.ocean.pieces) {
            CHECK(convex_nondegenerate(piece.poly));
            for (auto& cv : piece.core_vertices) CHECK(point_in_convex(cv, piece.poly));
        }
        for (auto& core : S.ocean.cores) {
            Ring ccw = core;
            std::reverse(ccw.begin(), ccw.end());
            CHECK(convex_nondegenerate(ccw));
        }
        // P_core vertex budget: O(h)
        size_t core_vertices = 0;
        for (auto& c : S.ocean.cores) core_vertices += c.size();
        CHECK(core_vertices <= 64 * std::max<size_t>(d.hole_count(), 1));
    }
}

TEST_CASE("pockets and ocean membership are consistent") {
    auto d = perturb_general_position(fixtures::canal1());
    auto S = build_corridor_structure(d);
    // pocket interiors are not ocean; gate midpoints are
    for (auto& pk : S.pockets) {
        Pt inside = convex_interior_point(pk.ring);  // may fall outside for nonconvex rings
        if (point_in_ring(inside, pk.ring) == Side::In) CHECK_FALSE(S.in_ocean(inside, d));
        for (auto& g : pk.gates) {
            Pt mid((g.a.x + g.b.x) / 2, (g.a.y + g.b.y) / 2);
            CHECK(S.in_ocean(mid, d));
        }
    }
}
