#pragma once

#include <random>
#include <string>

#include "l1geo/domain.hpp"

namespace l1geo {
namespace fixtures {

inline PolygonalDomain unit_square() {
    return PolygonalDomain::from_rings({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {});
}

inline PolygonalDomain rectangle(long w, long h) {
    return PolygonalDomain::from_rings({{0, 0}, {w, 0}, {w, h}, {0, h}}, {});
}

inline PolygonalDomain l_shape() {
    return PolygonalDomain::from_rings({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, {});
}

/// [0,10]^2 with hole [4,6]^2.
inline PolygonalDomain hole1() {
    return PolygonalDomain::from_rings({{0, 0}, {10, 0}, {10, 10}, {0, 10}},
                                       {{{4, 4}, {6, 4}, {6, 6}, {4, 6}}});
}

/// [0,20]^2 with two square holes near (5,10) and (15,10).
inline PolygonalDomain twohole() {
    return PolygonalDomain::from_rings(
        {{0, 0}, {20, 0}, {20, 20}, {0, 20}},
        {{{4, 9}, {6, 9}, {6, 11}, {4, 11}}, {{14, 9}, {16, 9}, {16, 11}, {14, 11}}});
}

/// Two interlocked L-shaped holes pinching a closed hourglass: the upper
/// hole's tooth hangs down on the left, the lower hole's tooth rises on the
/// right, so both hourglass sides share the strait (8,4)-(11,6). The corridor
/// between the holes contains a canal around that corridor path.
inline PolygonalDomain canal1() {
    Ring outer{{0, 0}, {20, 0}, {20, 10}, {0, 10}};
    Ring upper{{6, 4}, {8, 4}, {8, 7}, {14, 7}, {14, 9}, {6, 9}};
    Ring lower{{5, 1}, {13, 1}, {13, 6}, {11, 6}, {11, 3}, {5, 3}};
    return PolygonalDomain::from_rings(outer, {upper, lower});
}

namespace detail {

inline Ring random_convex_ring(std::mt19937_64& rng, long cx, long cy, long radius, int verts) {
    // lattice points on a coarse circle, angle-sorted
    std::vector<std::pair<double, Pt>> pts;
    std::uniform_real_distribution<double> ang(0.0, 6.283185307);
    std::uniform_int_distribution<long> rad(radius / 2, radius);
    for (int i = 0; i < verts * 3 && (int)pts.size() < verts; ++i) {
        double a = ang(rng);
        long r = rad(rng);
        long x = cx + (long)(r * std::cos(a));
        long y = cy + (long)(r * std::sin(a));
        bool dup = false;
        for (auto& [aa, p] : pts)
            if (p == Pt(x, y)) dup = true;
        if (!dup) pts.push_back({a, Pt(x, y)});
    }
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Ring hull;
    for (auto& [a, p] : pts) hull.push_back(p);
    // convexify: walk and drop right turns
    bool changed = true;
    while (changed && hull.size() > 3) {
        changed = false;
        for (size_t i = 0; i < hull.size(); ++i) {
            size_t n = hull.size();
            if (orient(hull[(i + n - 1) % n], hull[i], hull[(i + 1) % n]) <= 0) {
                hull.erase(hull.begin() + i);
                changed = true;
                break;
            }
        }
    }
    return hull;
}

}  // namespace detail

/// Deterministic fixture generator. Kinds:
///  - "random-holes": convex-ish outer with rejection-placed convex holes
///  - "pinch":        interlocked L-holes guaranteeing a closed hourglass
///  - "comb":         rectangle with teeth (many reflex vertices, h = 0)
/// The result is GP-perturbed so no two vertices share a coordinate.
inline PolygonalDomain generate(const std::string& kind, int n, int h, unsigned long seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    PolygonalDomain raw;
    if (kind == "comb") {
        int teeth = std::max(1, std::min((n - 4) / 4, 12));
        std::uniform_int_distribution<long> depth(4, 8);
        Ring outer;
        long w = 4 * teeth + 2;
        outer.push_back({0, 0});
        outer.push_back({w, 0});
        outer.push_back({w, 10});
        for (int t = teeth; t >= 1; --t) {
            long x1 = 4 * t, x0 = 4 * t - 2;
            long d = depth(rng);
            outer.push_back({x1, 10});
            outer.push_back({x1, 10 - d});
            outer.push_back({x0, 10 - d});
            outer.push_back({x0, 10});
        }
        outer.push_back({0, 10});
        raw = PolygonalDomain::from_rings(outer, {});
    } else if (kind == "pinch") {
        std::uniform_int_distribution<long> jig(0, 2), jig01(0, 1);
        long j1 = jig(rng), j2 = jig(rng), j3 = jig01(rng), j4 = jig01(rng);
        Ring outer{{0, 0}, {24, 0}, {24, 12}, {0, 12}};
        // upper block with a tooth hanging at its left, lower block with a
        // tooth rising at its right; tooth tips interlock (tooth1 lower and
        // left of tooth2) which closes the hourglass between the holes
        long ux0 = 6 + j1, ux1 = 16 + j2, leg1y = 4 + j3;
        Ring upper{{ux0, leg1y}, {ux0 + 2, leg1y}, {ux0 + 2, 8}, {ux1, 8}, {ux1, 10}, {ux0, 10}};
        long lx0 = 5 + j2, lx1 = 15 + j1, leg2y = 6 + j4;
        Ring lower{{lx0, 2}, {lx1, 2}, {lx1, leg2y}, {lx1 - 2, leg2y}, {lx1 - 2, 3}, {lx0, 3}};
        raw = PolygonalDomain::from_rings(outer, {upper, lower});
        if (h >= 3) {
            // optional extra small hole in a free corner
            raw = PolygonalDomain::from_rings(outer,
                                              {upper, lower, {{2, 9}, {3, 9}, {3, 10}, {2, 10}}});
        }
    } else {  // random-holes
        int target_h = std::max(0, std::min(h, 4));
        Ring outer = detail::random_convex_ring(rng, 0, 0, 40, std::max(5, n - 5 * target_h));
        PolygonalDomain shell = PolygonalDomain::from_rings(outer, {});
        std::vector<Ring> holes;
        std::uniform_int_distribution<long> pos(-25, 25);
        for (int tries = 0; tries < 300 && (int)holes.size() < target_h; ++tries) {
            long cx = pos(rng), cy = pos(rng);
            Ring hring = detail::random_convex_ring(rng, cx, cy, 6, 5);
            if (hring.size() < 3) continue;
            std::reverse(hring.begin(), hring.end());
            std::vector<Ring> cand = holes;
            cand.push_back(hring);
            PolygonalDomain test = PolygonalDomain::from_rings(outer, cand);
            if (validate_domain(test).accepted) holes = cand;
        }
        raw = PolygonalDomain::from_rings(outer, holes);
    }
    if (!validate_domain(raw).accepted)
        throw StructuralError("fixture generator produced an invalid domain: " + kind);
    return perturb_general_position(raw);
}

}  // namespace fixtures
}  // namespace l1geo
