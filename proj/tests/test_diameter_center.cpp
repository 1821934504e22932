#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "l1geo/center.hpp"
#include "l1geo/diameter.hpp"
#include "l1geo/fixtures.hpp"
#include "l1geo/oracle.hpp"

using namespace l1geo;

TEST_CASE("cell pair functions match the engine on sampled pairs") {
    auto P = perturb_general_position(fixtures::hole1());
    Analysis A = Analysis::build(P);
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<size_t> pick_d(0, A.Daug.cells().size() - 1);
    std::uniform_int_distribution<size_t> pick_m(0, A.DM.cells().size() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<long> off(1, 7);
    auto sample_in = [&](const Ring& frag) {
        // random convex combination of the interior point and a vertex
        Pt c = convex_interior_point(frag);
        const Pt& v = frag[off(rng) % frag.size()];
        Rat t = rat(off(rng), 8);
        return Pt(c.x + t * (v.x - c.x), c.y + t * (v.y - c.y));
    };
    int tested = 0;
    while (tested < 60) {
        CellRef sref, tref;
        if (coin(rng)) sref = {CellFamily::DAug, (int)pick_d(rng)};
        else sref = {CellFamily::DM, (int)pick_m(rng)};
        if (coin(rng)) tref = {CellFamily::DAug, (int)pick_d(rng)};
        else tref = {CellFamily::DM, (int)pick_m(rng)};
        CellPairDistFn fn = build_cellpair_fn(A, sref, tref, true);
        ++tested;
        const DecompCell& sc = *(fn.swapped ? fn.t_cell : fn.s_cell);
        for (int k = 0; k < 6; ++k) {
            const TermGroup& g = fn.groups[k % fn.groups.size()];
            Pt s = sample_in(sc.fragments[k % sc.fragments.size()]);
            Pt t = sample_in(g.fragments[k % g.fragments.size()]);
            Pt first = fn.swapped ? t : s;
            Pt second = fn.swapped ? s : t;
            CHECK(fn.eval(first, second) == A.engine->distance(first, second));
        }
    }
}

TEST_CASE("diameter: unit square and rectangles") {
    Analysis sq = Analysis::build(fixtures::unit_square());
    auto d1 = diameter_preliminary(sq);
    CHECK(d1.value == Rat(2));
    auto d2 = diameter_improved(sq);
    CHECK(d2.value == Rat(2));
    // witnesses are opposite corners
    CHECK(l1_dist(d1.s, d1.t) == Rat(2));

    Analysis rect = Analysis::build(fixtures::rectangle(7, 3));
    CHECK(diameter_preliminary(rect).value == Rat(10));
    CHECK(diameter_improved(rect).value == Rat(10));
}

TEST_CASE("diameter: HOLE1 equals 20 with corner witnesses") {
    auto P = fixtures::hole1();
    Analysis A = Analysis::build(P);
    auto prelim = diameter_preliminary(A);
    CHECK(prelim.value == Rat(20));
    auto improved = diameter_improved(A);
    CHECK(improved.value == Rat(20));
    CHECK(oracle_dist(P, prelim.s, prelim.t) == prelim.value);
}

TEST_CASE("diameter: algorithms agree on fixtures") {
    for (auto make : {fixtures::l_shape, fixtures::twohole, fixtures::canal1}) {
        auto P = perturb_general_position(make());
        Analysis A = Analysis::build(P);
        auto prelim = diameter_preliminary(A);
        auto improved = diameter_improved(A);
        CHECK(prelim.value == improved.value);
        CHECK(A.engine->distance(prelim.s, prelim.t) == prelim.value);
        CHECK(A.engine->distance(improved.s, improved.t) == improved.value);
        // soundness on random pairs
        auto pts = sample_points(P, 30, 13);
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                CHECK(A.engine->distance(pts[i], pts[j]) <= prelim.value);
    }
}

TEST_CASE("constrained diameter of aligned cells uses corner pairs") {
    auto P = perturb_general_position(fixtures::hole1());
    Analysis A = Analysis::build(P);
    // self-pair: aligned with itself, maximum over corner pairs
    for (int id : {0, 3}) {
        CellRef r{CellFamily::DAug, id};
        auto fn = build_cellpair_fn(A, r, r, true);
        auto m = fn.maximize(std::nullopt);
        REQUIRE(m.valid);
        Rat best(0);
        const DecompCell& c = A.Daug.cells()[id];
        for (auto& u : c.poly)
            for (auto& v : c.poly) best = std::max(best, l1_dist(u, v));
        CHECK(m.value == best);
    }
}

TEST_CASE("project_R: patches tile the cell and match pointwise maxima") {
    auto P = perturb_general_position(fixtures::hole1());
    Analysis A = Analysis::build(P);
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<size_t> pick(0, A.Daug.cells().size() - 1);
    for (int trial = 0; trial < 8; ++trial) {
        CellRef sref{CellFamily::DAug, (int)pick(rng)};
        CellRef tref{CellFamily::DAug, (int)pick(rng)};
        CellPairDistFn fn = build_cellpair_fn(A, sref, tref, true);
        auto patches = project_R(fn);
        // tiling: areas add up to the cell area
        Rat acc(0);
        for (auto& p : patches) acc += rat_abs(ring_signed_area2(p.region));
        CHECK(acc == rat_abs(ring_signed_area2(fn.s_cell->poly)));
        // pointwise: patch value equals the exact fixed-q maximum
        for (size_t pi = 0; pi < patches.size() && pi < 4; ++pi) {
            Pt q = convex_interior_point(patches[pi].region);
            auto exact = fn.maximize_over_t(q, std::nullopt);
            REQUIRE(exact.valid);
            CHECK(patches[pi].eval(q) == exact.value);
        }
    }
}

TEST_CASE("eval_R: unit square corners and center") {
    Analysis A = Analysis::build(fixtures::unit_square());
    CHECK(eval_R(A, Pt(0, 0)).value == Rat(2));
    CHECK(eval_R(A, Pt(rat(1, 2), rat(1, 2))).value == Rat(1));
}

TEST_CASE("center: unit square and rectangle") {
    Analysis sq = Analysis::build(fixtures::unit_square());
    auto c1 = center_preliminary(sq);
    CHECK(c1.radius == Rat(1));
    CHECK(c1.center == Pt(rat(1, 2), rat(1, 2)));
    auto c2 = center_improved(sq);
    CHECK(c2.radius == Rat(1));
    CHECK(c2.center == c1.center);

    Analysis rect = Analysis::build(fixtures::rectangle(3, 1));
    auto cr = center_preliminary(rect);
    CHECK(cr.radius == Rat(2));
    CHECK(cr.center == Pt(rat(3, 2), rat(1, 2)));
}

TEST_CASE("center: algorithms agree and the audit holds") {
    for (auto make : {fixtures::l_shape, fixtures::hole1}) {
        auto P = perturb_general_position(make());
        Analysis A = Analysis::build(P);
        auto prelim = center_preliminary(A);
        auto improved = center_improved(A);
        CHECK(prelim.radius == improved.radius);
        // optimality audit at random points
        auto pts = sample_points(P, 40, 17);
        for (auto& q : pts) CHECK(eval_R(A, q).value >= prelim.radius);
        CHECK(eval_R(A, prelim.center).value == prelim.radius);
        // radius vs diameter
        auto diam = diameter_improved(A);
        CHECK(2 * prelim.radius >= diam.value);
        CHECK(prelim.radius <= diam.value);
    }
}
