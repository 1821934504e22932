#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "l1geo/geom.hpp"

namespace l1geo {

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PerturbationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Unreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalInvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationReport {
    bool accepted = false;
    bool general_position = false;  // no two vertices share an x or y coordinate
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

struct DomainEdge {
    Pt a, b;
    int ring;  // 0 = outer, i >= 1 = hole i-1
    int index; // edge index within the ring (a = ring[index])
};

/// Closed connected polygonal region with holes. Outer ring CCW, holes CW.
class PolygonalDomain {
  public:
    PolygonalDomain() = default;

    /// Normalizes ring orientations; performs no other validation.
    static PolygonalDomain from_rings(Ring outer, std::vector<Ring> holes) {
        PolygonalDomain d;
        if (ring_signed_area2(outer) < 0) std::reverse(outer.begin(), outer.end());
        for (auto& h : holes)
            if (ring_signed_area2(h) > 0) std::reverse(h.begin(), h.end());
        d.outer_ = std::move(outer);
        d.holes_ = std::move(holes);
        d.rebuild();
        return d;
    }

    const Ring& outer() const { return outer_; }
    const std::vector<Ring>& holes() const { return holes_; }
    const Ring& ring(int i) const { return i == 0 ? outer_ : holes_[i - 1]; }
    int ring_count() const { return 1 + (int)holes_.size(); }

    size_t vertex_count() const { return vertex_count_; }
    size_t hole_count() const { return holes_.size(); }

    const std::vector<DomainEdge>& edges() const { return edges_; }
    const std::vector<Pt>& vertices() const { return vertices_; }
    const BBox& bounds() const { return bbox_; }

    Side locate_point(const Pt& p) const {
        Side s = point_in_ring(p, outer_);
        if (s != Side::In) return s;
        for (auto& h : holes_) {
            Side hs = point_in_ring(p, h);
            if (hs == Side::In) return Side::Out;
            if (hs == Side::Boundary) return Side::Boundary;
        }
        return Side::In;
    }

    /// Closed-region membership.
    bool contains(const Pt& p) const { return locate_point(p) != Side::Out; }

    /// Closed-region containment of a whole segment: no proper edge crossing
    /// and every sub-interval between boundary contacts stays inside.
    bool contains_segment(const Pt& a, const Pt& b) const {
        if (!contains(a) || !contains(b)) return false;
        if (a == b) return true;
        std::vector<Rat> params{Rat(0), Rat(1)};
        for (auto& e : edges_) {
            if (segments_properly_cross(a, b, e.a, e.b)) return false;
            for (auto& p : segment_intersection_points(a, b, e.a, e.b))
                params.push_back(param_on(a, b, p));
        }
        std::sort(params.begin(), params.end());
        params.erase(std::unique(params.begin(), params.end()), params.end());
        for (size_t i = 0; i + 1 < params.size(); ++i) {
            Rat t = (params[i] + params[i + 1]) / 2;
            if (!contains(Pt(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))) return false;
        }
        return true;
    }

    /// Maximal closed intervals of the horizontal line y = c (as x-ranges)
    /// lying inside the closed domain. Degenerate touch points included as
    /// [x, x].
    std::vector<std::pair<Rat, Rat>> inside_intervals_h(const Rat& c) const {
        return inside_intervals(false, c);
    }
    /// Same for the vertical line x = c (as y-ranges).
    std::vector<std::pair<Rat, Rat>> inside_intervals_v(const Rat& c) const {
        return inside_intervals(true, c);
    }

    Rat area2() const {
        Rat acc = rat_abs(ring_signed_area2(outer_));
        for (auto& h : holes_) acc -= rat_abs(ring_signed_area2(h));
        return acc;
    }

  private:
    static Rat param_on(const Pt& a, const Pt& b, const Pt& p) {
        if (a.x != b.x) return (p.x - a.x) / (b.x - a.x);
        return (p.y - a.y) / (b.y - a.y);
    }

    std::vector<std::pair<Rat, Rat>> inside_intervals(bool vertical, const Rat& c) const {
        // events: coordinates along the line where inside-ness may change
        std::vector<Rat> ev;
        for (auto& e : edges_) {
            Rat a1 = vertical ? e.a.y : e.a.x, a2 = vertical ? e.a.x : e.a.y;
            Rat b1 = vertical ? e.b.y : e.b.x, b2 = vertical ? e.b.x : e.b.y;
            // (a2, b2) are distances from the line's axis; (a1, b1) positions along it
            if (a2 == c && b2 == c) {
                ev.push_back(a1);
                ev.push_back(b1);
            } else if ((a2 <= c && c <= b2) || (b2 <= c && c <= a2)) {
                Rat t = (c - a2) / (b2 - a2);
                ev.push_back(a1 + t * (b1 - a1));
            }
        }
        std::sort(ev.begin(), ev.end());
        ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
        auto mk = [&](const Rat& along) { return vertical ? Pt(c, along) : Pt(along, c); };
        std::vector<std::pair<Rat, Rat>> out;
        size_t i = 0;
        while (i < ev.size()) {
            if (!contains(mk(ev[i]))) { ++i; continue; }
            size_t j = i;
            while (j + 1 < ev.size() && contains(mk((ev[j] + ev[j + 1]) / 2)) &&
                   contains(mk(ev[j + 1])))
                ++j;
            out.emplace_back(ev[i], ev[j]);
            i = j + 1;
        }
        return out;
    }

    void rebuild() {
        edges_.clear();
        vertices_.clear();
        vertex_count_ = 0;
        bbox_ = BBox{};
        for (int r = 0; r < ring_count(); ++r) {
            const Ring& rg = ring(r);
            for (size_t i = 0; i < rg.size(); ++i) {
                edges_.push_back({rg[i], rg[(i + 1) % rg.size()], r, (int)i});
                vertices_.push_back(rg[i]);
                bbox_.add(rg[i]);
            }
            vertex_count_ += rg.size();
        }
    }

    Ring outer_;
    std::vector<Ring> holes_;
    std::vector<DomainEdge> edges_;
    std::vector<Pt> vertices_;
    size_t vertex_count_ = 0;
    BBox bbox_;
};

namespace detail {

inline bool ring_is_simple(const Ring& r, std::string* why) {
    size_t n = r.size();
    if (n < 3) {
        if (why) *why = "ring has fewer than 3 vertices";
        return false;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (r[i] == r[j]) {
                if (why) *why = "repeated vertex (pinch) in ring";
                return false;
            }
    for (size_t i = 0; i < n; ++i) {
        if (r[i] == r[(i + 1) % n]) {
            if (why) *why = "zero-length edge";
            return false;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const Pt &a = r[i], &b = r[(i + 1) % n];
            const Pt &c = r[j], &d = r[(j + 1) % n];
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // may only share the common endpoint
                const Pt& shared = (j == i + 1) ? b : a;
                for (auto& p : segment_intersection_points(a, b, c, d))
                    if (!(p == shared)) {
                        if (why) *why = "adjacent edges overlap";
                        return false;
                    }
            } else if (segments_intersect(a, b, c, d)) {
                if (why) *why = "non-adjacent edges intersect";
                return false;
            }
        }
    }
    if (ring_signed_area2(r) == 0) {
        if (why) *why = "ring has zero area";
        return false;
    }
    return true;
}

inline bool rings_interact(const Ring& a, const Ring& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()]))
                return true;
    return false;
}

}  // namespace detail

inline ValidationReport validate_domain(const PolygonalDomain& d) {
    ValidationReport rep;
    std::string why;
    if (!detail::ring_is_simple(d.outer(), &why)) rep.errors.push_back("outer: " + why);
    for (size_t h = 0; h < d.holes().size(); ++h)
        if (!detail::ring_is_simple(d.holes()[h], &why))
            rep.errors.push_back("hole " + std::to_string(h) + ": " + why);
    if (ring_signed_area2(d.outer()) < 0) rep.errors.push_back("outer ring not counterclockwise");
    for (size_t h = 0; h < d.holes().size(); ++h)
        if (ring_signed_area2(d.holes()[h]) > 0)
            rep.errors.push_back("hole " + std::to_string(h) + " not clockwise");
    if (rep.errors.empty()) {
        for (size_t h = 0; h < d.holes().size(); ++h) {
            const Ring& hole = d.holes()[h];
            if (detail::rings_interact(hole, d.outer()))
                rep.errors.push_back("hole " + std::to_string(h) + " touches outer boundary");
            else
                for (auto& p : hole)
                    if (point_in_ring(p, d.outer()) != Side::In) {
                        rep.errors.push_back("hole " + std::to_string(h) + " not inside outer");
                        break;
                    }
            for (size_t g = h + 1; g < d.holes().size(); ++g) {
                const Ring& other = d.holes()[g];
                bool bad = detail::rings_interact(hole, other);
                if (!bad)
                    bad = point_in_ring(other[0], hole) == Side::In ||
                          point_in_ring(hole[0], other) == Side::In;
                if (bad)
                    rep.errors.push_back("holes " + std::to_string(h) + " and " +
                                         std::to_string(g) + " not disjoint");
            }
        }
    }
    rep.general_position = true;
    const auto& vs = d.vertices();
    for (size_t i = 0; i < vs.size() && rep.general_position; ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i].x == vs[j].x || vs[i].y == vs[j].y) {
                rep.general_position = false;
                rep.warnings.push_back("general-position violated: vertices share a coordinate");
                break;
            }
    rep.accepted = rep.errors.empty();
    return rep;
}

namespace detail {

inline int small_prime_above(int n) {
    static const int primes[] = {5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
                                 53,  61,  71,  83,  97,  113, 127, 151, 173, 197, 211,
                                 241, 277, 331, 383, 443, 509, 587, 677, 787, 907, 1049};
    for (int p : primes)
        if (p > n) return p;
    return 2099;
}

/// Exact L-infinity distance from a point to a segment.
inline Rat linf_point_segment(const Pt& p, const Pt& a, const Pt& b) {
    std::vector<Rat> cands{Rat(0), Rat(1)};
    Rat dx = b.x - a.x, dy = b.y - a.y;
    // |px - ax - t dx| = |py - ay - t dy| breakpoints and zeros of each term
    Rat ex = p.x - a.x, ey = p.y - a.y;
    if (dx != dy) cands.push_back((ex - ey) / (dx - dy));
    if (dx + dy != 0) cands.push_back((ex + ey) / (dx + dy));
    if (dx != 0) cands.push_back(ex / dx);
    if (dy != 0) cands.push_back(ey / dy);
    std::optional<Rat> best;
    for (auto& t : cands) {
        Rat tc = t;
        if (tc < 0) tc = 0;
        if (tc > 1) tc = 1;
        Rat v = std::max(rat_abs(ex - tc * dx), rat_abs(ey - tc * dy));
        if (!best || v < *best) best = v;
    }
    return *best;
}

}  // namespace detail

/// Shifts vertex i by (i*eps, (i^2 mod prime)*eps) with eps derived from the
/// minimum feature separation, then re-validates; halves eps until the
/// perturbed domain is valid and in general position.
inline PolygonalDomain perturb_general_position(const PolygonalDomain& d,
                                                const Rat& scale = Rat(1)) {
    if (!validate_domain(d).accepted)
        throw StructuralError("perturb_general_position: input domain invalid");
    const auto& vs = d.vertices();
    size_t n = vs.size();
    int prime = detail::small_prime_above(2 * (int)n);

    // minimum nonzero coordinate gap and vertex-to-edge clearance
    std::optional<Rat> sep;
    auto consider = [&sep](const Rat& v) {
        if (v > 0 && (!sep || v < *sep)) sep = v;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            consider(rat_abs(vs[i].x - vs[j].x));
            consider(rat_abs(vs[i].y - vs[j].y));
        }
    for (size_t i = 0; i < n; ++i)
        for (auto& e : d.edges()) {
            if (e.a == vs[i] || e.b == vs[i]) continue;
            consider(detail::linf_point_segment(vs[i], e.a, e.b));
        }
    if (!sep) throw PerturbationFailed("degenerate domain: no feature separation");

    Rat eps = (*sep * scale) / Rat(8 * (long)prime);
    for (int attempt = 0; attempt < 60; ++attempt) {
        long gidx = 0;
        Ring outer;
        std::vector<Ring> holes;
        auto shift = [&](const Pt& p) {
            long i = gidx++;
            return Pt(p.x + Rat(i) * eps, p.y + Rat((i * i) % prime) * eps);
        };
        for (auto& p : d.outer()) outer.push_back(shift(p));
        for (auto& h : d.holes()) {
            Ring hr;
            for (auto& p : h) hr.push_back(shift(p));
            holes.push_back(std::move(hr));
        }
        PolygonalDomain out = PolygonalDomain::from_rings(std::move(outer), std::move(holes));
        ValidationReport rep = validate_domain(out);
        if (rep.accepted && rep.general_position) return out;
        eps /= 2;
    }
    throw PerturbationFailed("no topology-preserving epsilon found at requested scale");
}

}  // namespace l1geo
