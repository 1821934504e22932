#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "l1geo/rational.hpp"

namespace l1geo {

struct Pt {
    Rat x, y;

    Pt() : x(0), y(0) {}
    Pt(Rat px, Rat py) : x(std::move(px)), y(std::move(py)) {}
    Pt(long px, long py) : x(px), y(py) {}

    bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Pt& o) const { return !(*this == o); }
    // lexicographic; used for canonical tie-breaking throughout
    bool operator<(const Pt& o) const { return x < o.x || (x == o.x && y < o.y); }
};

struct Seg {
    Pt a, b;
    Seg() = default;
    Seg(Pt pa, Pt pb) : a(std::move(pa)), b(std::move(pb)) {}
    bool degenerate() const { return a == b; }
};

using PolyPath = std::vector<Pt>;  // >= 1 vertex, consecutive vertices distinct
using Ring = std::vector<Pt>;      // closed implicitly (no repeated first vertex)

inline Rat l1_dist(const Pt& p, const Pt& q) { return rat_abs(p.x - q.x) + rat_abs(p.y - q.y); }

inline Rat cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// +1 left turn, -1 right turn, 0 collinear.
inline int orient(const Pt& o, const Pt& a, const Pt& b) { return rat_sign(cross(o, a, b)); }

/// p collinear with [a,b] and within its bounding box.
inline bool on_segment(const Pt& p, const Pt& a, const Pt& b) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

inline Rat path_l1_length(const PolyPath& path) {
    Rat total(0);
    for (size_t i = 1; i < path.size(); ++i) total += l1_dist(path[i - 1], path[i]);
    return total;
}

/// Staircase test: all x-displacements share a sign (or vanish), same for y.
inline bool is_monotone(const PolyPath& path) {
    int sx = 0, sy = 0;
    for (size_t i = 1; i < path.size(); ++i) {
        int dx = rat_sign(path[i].x - path[i - 1].x);
        int dy = rat_sign(path[i].y - path[i - 1].y);
        if (dx != 0) {
            if (sx != 0 && dx != sx) return false;
            sx = dx;
        }
        if (dy != 0) {
            if (sy != 0 && dy != sy) return false;
            sy = dy;
        }
    }
    return true;
}

/// Segments share at least one point.
inline bool segments_intersect(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
        if (o1 != 0 || o2 != 0 || o3 != 0 || o4 != 0) return true;
    }
    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        // collinear: overlapping boxes
        return std::max(std::min(a.x, b.x), std::min(c.x, d.x)) <=
                   std::min(std::max(a.x, b.x), std::max(c.x, d.x)) &&
               std::max(std::min(a.y, b.y), std::min(c.y, d.y)) <=
                   std::min(std::max(a.y, b.y), std::max(c.y, d.y));
    }
    return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

/// Transversal crossing at a point interior to both segments.
inline bool segments_properly_cross(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

/// Intersection point of non-parallel lines (a,b) and (c,d).
inline std::optional<Pt> line_intersection(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    Rat r1 = b.x - a.x, r2 = b.y - a.y;
    Rat s1 = d.x - c.x, s2 = d.y - c.y;
    Rat denom = r1 * s2 - r2 * s1;
    if (denom == 0) return std::nullopt;
    Rat t = ((c.x - a.x) * s2 - (c.y - a.y) * s1) / denom;
    return Pt(a.x + t * r1, a.y + t * r2);
}

/// All isolated intersection points of two segments, plus overlap endpoints
/// when they are collinear. Result is deduplicated but unsorted.
inline std::vector<Pt> segment_intersection_points(const Pt& a, const Pt& b, const Pt& c,
                                                   const Pt& d) {
    std::vector<Pt> out;
    auto push = [&out](const Pt& p) {
        for (auto& q : out)
            if (q == p) return;
        out.push_back(p);
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    if (o1 == 0 && o2 == 0) {
        for (const Pt* p : {&c, &d})
            if (on_segment(*p, a, b)) push(*p);
        for (const Pt* p : {&a, &b})
            if (on_segment(*p, c, d)) push(*p);
        return out;
    }
    if (!segments_intersect(a, b, c, d)) return out;
    if (o1 == 0) { push(c); return out; }
    if (o2 == 0) { push(d); return out; }
    if (on_segment(a, c, d)) { push(a); return out; }
    if (on_segment(b, c, d)) { push(b); return out; }
    auto p = line_intersection(a, b, c, d);
    if (p) push(*p);
    return out;
}

inline Rat ring_signed_area2(const Ring& ring) {
    Rat sum(0);
    for (size_t i = 0; i < ring.size(); ++i) {
        const Pt& p = ring[i];
        const Pt& q = ring[(i + 1) % ring.size()];
        sum += p.x * q.y - q.x * p.y;
    }
    return sum;  // twice the signed area
}

enum class Side { Out = 0, Boundary = 1, In = 2 };

/// Point vs. closed ring, orientation-independent (crossing number with
/// exact handling of vertices and horizontal edges).
inline Side point_in_ring(const Pt& p, const Ring& ring) {
    bool inside = false;
    size_t n = ring.size();
    for (size_t i = 0; i < n; ++i) {
        const Pt& a = ring[i];
        const Pt& b = ring[(i + 1) % n];
        if (on_segment(p, a, b)) return Side::Boundary;
        bool a_below = a.y <= p.y, b_below = b.y <= p.y;
        if (a_below != b_below) {
            // x coordinate of edge at height p.y vs p.x
            int o = orient(a, b, p);
            if (b.y < a.y) o = -o;
            if (o > 0) inside = !inside;  // edge strictly left ... (upward crossing left of p)
        }
    }
    return inside ? Side::In : Side::Out;
}

struct BBox {
    Rat xmin, ymin, xmax, ymax;
    bool empty = true;
    void add(const Pt& p) {
        if (empty) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            empty = false;
            return;
        }
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    bool contains(const Pt& p) const {
        return !empty && xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax;
    }
};

inline BBox bbox_of(const Ring& ring) {
    BBox b;
    for (auto& p : ring) b.add(p);
    return b;
}

// ---- convex polygon helpers (vertices CCW) ----

inline bool point_in_convex(const Pt& p, const Ring& poly) {
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i)
        if (orient(poly[i], poly[(i + 1) % n], p) < 0) return false;
    return true;
}

/// Clip CCW convex polygon by halfplane a*x + b*y <= c.
inline Ring clip_convex(const Ring& poly, const Rat& a, const Rat& b, const Rat& c) {
    Ring out;
    size_t n = poly.size();
    if (n == 0) return out;
    // explicit Rat return: a deduced return type would be a lazy GMP
    // expression referencing dead temporaries
    auto val = [&](const Pt& p) -> Rat { return a * p.x + b * p.y - c; };
    for (size_t i = 0; i < n; ++i) {
        const Pt& p = poly[i];
        const Pt& q = poly[(i + 1) % n];
        Rat vp = val(p), vq = val(q);
        if (vp <= 0) out.push_back(p);
        if ((vp < 0 && vq > 0) || (vp > 0 && vq < 0)) {
            Rat t = vp / (vp - vq);
            out.push_back(Pt(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)));
        }
    }
    // drop exact duplicates introduced by vertices on the cut line
    Ring dedup;
    for (auto& p : out)
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    return dedup;
}

/// Average of the vertices: interior for convex polygons.
inline Pt convex_interior_point(const Ring& poly) {
    Rat sx(0), sy(0);
    for (auto& p : poly) { sx += p.x; sy += p.y; }
    Rat n(static_cast<long>(poly.size()));
    return Pt(sx / n, sy / n);
}

inline bool convex_nondegenerate(const Ring& poly) {
    if (poly.size() < 3) return false;
    return rat_sign(ring_signed_area2(poly)) != 0;
}

}  // namespace l1geo
