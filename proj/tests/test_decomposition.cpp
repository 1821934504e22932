#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "l1geo/decomposition.hpp"
#include "l1geo/fixtures.hpp"
#include "l1geo/visgraph.hpp"

using namespace l1geo;

namespace {

Rat cells_area2(const Decomposition& D) {
    Rat acc(0);
    for (auto& c : D.cells()) acc += rat_abs(ring_signed_area2(c.poly));
    return acc;
}

/// Independent subdivision size check via Euler's formula: the number of
/// bounded in-domain faces must be E - V + 1 - h, with V and E counted
/// directly from pairwise segment intersections.
size_t euler_cell_count(const PolygonalDomain& P, const Decomposition& D) {
    std::vector<Seg> segs;
    for (auto& e : P.edges()) segs.push_back(Seg(e.a, e.b));
    for (auto& d : D.diagonals()) segs.push_back(d.segment);
    std::set<Pt> verts;
    for (auto& s : segs) {
        verts.insert(s.a);
        verts.insert(s.b);
    }
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j)
            for (auto& p : segment_intersection_points(segs[i].a, segs[i].b, segs[j].a, segs[j].b))
                verts.insert(p);
    // count distinct sub-edges between consecutive vertices along segments
    std::set<std::pair<Pt, Pt>> subedges;
    for (auto& s : segs) {
        std::vector<Pt> on;
        for (auto& v : verts)
            if (on_segment(v, s.a, s.b)) on.push_back(v);
        Pt dir(s.b.x - s.a.x, s.b.y - s.a.y);
        std::sort(on.begin(), on.end(), [&](const Pt& p, const Pt& q) {
            return dir.x * (p.x - s.a.x) + dir.y * (p.y - s.a.y) <
                   dir.x * (q.x - s.a.x) + dir.y * (q.y - s.a.y);
        });
        for (size_t k = 0; k + 1 < on.size(); ++k) {
            Pt u = on[k], v = on[k + 1];
            if (v < u) std::swap(u, v);
            subedges.insert({u, v});
        }
    }
    long V = (long)verts.size(), E = (long)subedges.size();
    return (size_t)(E - V + 1 - (long)P.hole_count());
}

}  // namespace

TEST_CASE("build_D: unit square is one cell with no diagonals") {
    auto P = fixtures::unit_square();
    auto D = build_D(P);
    CHECK(D.cells().size() == 1);
    CHECK(D.diagonals().empty());
    CHECK(D.cells()[0].corners.size() == 4);
}

TEST_CASE("build_D: L-shape splits at the reflex vertex") {
    auto P = fixtures::l_shape();
    auto D = build_D(P);
    int h = 0, v = 0;
    for (auto& d : D.diagonals()) (d.vertical ? v : h)++;
    CHECK(h == 1);
    CHECK(v >= 1);
    // the construction rule gives three cells on the integral L-shape
    // (two trapezoids per map, three nonempty overlay intersections)
    CHECK(D.cells().size() == 3);
    for (auto& c : D.cells()) CHECK(c.corners.size() <= 4);
    CHECK(cells_area2(D) == P.area2());
}

TEST_CASE("build_D: HOLE1 counts match the Euler-formula oracle") {
    auto P = perturb_general_position(fixtures::hole1());
    auto D = build_D(P);
    CHECK(D.cells().size() == euler_cell_count(P, D));
    CHECK(cells_area2(D) == P.area2());
    for (auto& c : D.cells()) {
        CHECK(c.corners.size() >= 3);
        CHECK(c.corners.size() <= 4);
    }
}

TEST_CASE("aligned: definition cases") {
    auto P = perturb_general_position(fixtures::hole1());
    auto D = build_D(P);
    for (auto& c : D.cells()) CHECK(D.aligned(c.id, c.id));  // self-aligned
    bool found_aligned_pair = false, found_unaligned_pair = false;
    for (auto& a : D.cells())
        for (auto& b : D.cells()) {
            if (a.id >= b.id) continue;
            if (D.aligned(a.id, b.id)) found_aligned_pair = true;
            else found_unaligned_pair = true;
        }
    CHECK(found_aligned_pair);
    CHECK(found_unaligned_pair);
    // diagonal-opposite cells around the hole are unaligned
    int c1 = D.locate(Pt(2, 2)), c2 = D.locate(Pt(8, 8));
    CHECK_FALSE(D.aligned(c1, c2));
}

TEST_CASE("aligned cells have straight-line geodesics (key lemma, first clause)") {
    auto P = perturb_general_position(fixtures::hole1());
    auto D = build_D(P);
    DistanceEngine eng(Environment::from_domain(P));
    std::mt19937_64 rng(23);
    int tested = 0;
    std::uniform_int_distribution<size_t> pick(0, D.cells().size() - 1);
    while (tested < 25) {
        const DecompCell& a = D.cells()[pick(rng)];
        const DecompCell& b = D.cells()[pick(rng)];
        if (!D.aligned(a.id, b.id)) continue;
        ++tested;
        Pt s = a.sample(), t = b.sample();
        CHECK(eng.distance(s, t) == l1_dist(s, t));
    }
}

TEST_CASE("build_DM: L-shape ocean decomposition by hand") {
    auto P = fixtures::l_shape();
    auto S = build_corridor_structure(P);
    auto DM = build_DM(S);
    CHECK(DM.cells().size() == 3);
    CHECK(cells_area2(DM) == P.area2());
}

TEST_CASE("build_DM: partition and counts on holed fixtures") {
    for (auto make : {fixtures::hole1, fixtures::twohole, fixtures::canal1}) {
        auto P = perturb_general_position(make());
        auto S = build_corridor_structure(P);
        auto DM = build_DM(S);
        size_t h = P.hole_count();
        CHECK(DM.cells().size() <= 256 * std::max<size_t>(h, 1) * std::max<size_t>(h, 1));
        Rat m_area = rat_abs(ring_signed_area2(S.ocean.outer));
        for (auto& isl : S.ocean.islands) m_area -= rat_abs(ring_signed_area2(isl));
        CHECK(cells_area2(DM) == m_area);
        for (auto& c : DM.cells()) CHECK(c.corners.size() >= 1);
    }
}

TEST_CASE("augment_D: oceanic cells nest in unique DM cells") {
    auto P = perturb_general_position(fixtures::hole1());
    auto S = build_corridor_structure(P);
    auto D = build_D(P);
    auto DM = build_DM(S);
    auto Daug = augment_D(P, D, DM);
    Daug.classify_oceanic(S.pockets);
    Daug.compute_parents(DM, true);
    for (auto& c : Daug.cells()) {
        if (!c.oceanic) continue;
        const DecompCell& parent = DM.cells()[c.parent];
        for (auto& p : c.poly) CHECK(point_in_ring(p, parent.poly) != Side::Out);
    }
}

TEST_CASE("augment_D: adds O(h) diagonals") {
    auto P = perturb_general_position(fixtures::twohole());
    auto S = build_corridor_structure(P);
    auto D = build_D(P);
    auto DM = build_DM(S);
    auto Daug = augment_D(P, D, DM);
    size_t added = 0;
    for (auto& d : Daug.diagonals())
        if (d.generation == DiagonalGeneration::FromAugmentation) added++;
    CHECK(added <= 32 * P.hole_count());
}

TEST_CASE("build_DM_A: refinement partitions DM cells") {
    auto P = fixtures::canal1();
    auto S = build_corridor_structure(P);
    auto DM = build_DM(S);
    for (auto& pk : S.pockets) {
        if (pk.kind != Pocket::Kind::Canal) continue;
        auto DMA = build_DM_A(S, pk);
        DMA.compute_parents(DM);
        std::map<int, Rat> child_area;
        for (auto& c : DMA.cells())
            child_area[c.parent] += rat_abs(ring_signed_area2(c.poly));
        for (auto& c : DM.cells()) {
            REQUIRE(child_area.count(c.id));
            CHECK(child_area[c.id] == rat_abs(ring_signed_area2(c.poly)));
        }
        std::map<int, int> child_count;
        for (auto& c : DMA.cells()) child_count[c.parent]++;
        for (auto& [parent, cnt] : child_count) CHECK(cnt <= 16);
    }
}

TEST_CASE("gate regions: containment-or-disjoint dichotomy") {
    auto P = fixtures::hole1();
    auto S = build_corridor_structure(P);
    auto D = build_D(P);
    for (auto& pk : S.pockets) {
        for (auto& g : pk.gates) {
            for (auto& c : D.cells()) {
                bool member = g_aligned(P, g, c);
                for (auto& frag : c.fragments) {
                    Pt q = convex_interior_point(frag);
                    CHECK(point_in_gate_region(P, g, q) == member);
                }
            }
            Pt mid((g.a.x + g.b.x) / 2, (g.a.y + g.b.y) / 2);
            CHECK(point_in_gate_region(P, g, mid));
        }
    }
}

TEST_CASE("locate: tie-break toward the smallest cell id") {
    auto P = perturb_general_position(fixtures::hole1());
    auto D = build_D(P);
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> c(0, 11 * 8);
    int done = 0;
    while (done < 200) {
        Pt p(rat(c(rng), 8), rat(c(rng), 8));
        if (!P.contains(p)) continue;
        ++done;
        int id = D.locate(p);
        CHECK(point_in_ring(p, D.cells()[id].poly) != Side::Out);
        for (int j = 0; j < id; ++j)
            CHECK(point_in_ring(p, D.cells()[j].poly) == Side::Out);
    }
    for (auto& d : D.diagonals()) {
        Pt mid((d.segment.a.x + d.segment.b.x) / 2, (d.segment.a.y + d.segment.b.y) / 2);
        if (!P.contains(mid)) continue;
        int id = D.locate(mid);
        for (int j = 0; j < id; ++j)
            CHECK(point_in_ring(mid, D.cells()[j].poly) == Side::Out);
    }
}

TEST_CASE("build_Df: covers pocket boundaries, excludes interior coastal cells") {
    auto P = perturb_general_position(fixtures::canal1());
    auto S = build_corridor_structure(P);
    auto D = build_D(P);
    auto DM = build_DM(S);
    auto Daug = augment_D(P, D, DM);
    Daug.classify_oceanic(S.pockets);
    auto Df = build_Df(P, Daug, DM);
    CHECK(Df.size() >= DM.cells().size());
    for (auto& pk : S.pockets) {
        for (size_t i = 0; i < pk.ring.size(); ++i) {
            Pt mid((pk.ring[i].x + pk.ring[(i + 1) % pk.ring.size()].x) / 2,
                   (pk.ring[i].y + pk.ring[(i + 1) % pk.ring.size()].y) / 2);
            bool covered = false;
            for (auto& ref : Df) {
                const DecompCell& c = ref.from_dm ? DM.cells()[ref.cell] : Daug.cells()[ref.cell];
                if (point_in_ring(mid, c.poly) != Side::Out) {
                    covered = true;
                    break;
                }
            }
            CHECK(covered);
        }
    }
    for (auto& ref : Df) {
        if (ref.from_dm) continue;
        const DecompCell& c = Daug.cells()[ref.cell];
        bool touches = false;
        for (size_t i = 0; i < c.poly.size() && !touches; ++i) {
            Pt mid((c.poly[i].x + c.poly[(i + 1) % c.poly.size()].x) / 2,
                   (c.poly[i].y + c.poly[(i + 1) % c.poly.size()].y) / 2);
            for (auto& e : P.edges())
                if (on_segment(mid, e.a, e.b)) touches = true;
        }
        CHECK(touches);
    }
}

TEST_CASE("cell fragments cover their cells exactly") {
    auto P = perturb_general_position(fixtures::canal1());
    auto S = build_corridor_structure(P);
    auto DM = build_DM(S);
    for (auto& c : DM.cells()) {
        Rat frag_area(0);
        for (auto& f : c.fragments) frag_area += rat_abs(ring_signed_area2(f));
        CHECK(frag_area == rat_abs(ring_signed_area2(c.poly)));
    }
}
