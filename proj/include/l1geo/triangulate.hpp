#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "l1geo/domain.hpp"
#include "l1geo/geom.hpp"

namespace l1geo {

struct Triangle {
    Pt a, b, c;  // CCW
    Pt centroid() const { return Pt((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3); }
    bool contains(const Pt& p) const {
        return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
    }
    const Pt& vertex(int i) const { return i == 0 ? a : (i == 1 ? b : c); }
};

struct Triangulation {
    std::vector<Triangle> tris;
    // adj[t][k]: triangle across edge (vertex k, vertex k+1), or -1
    std::vector<std::array<int, 3>> adj;
    // true if edge (k, k+1) of tris[t] lies on the domain boundary
    std::vector<std::array<bool, 3>> boundary_edge;

    int find_containing(const Pt& p) const {
        for (size_t t = 0; t < tris.size(); ++t)
            if (tris[t].contains(p)) return (int)t;
        return -1;
    }
};

namespace detail {

inline bool diagonal_clear(const Ring& ring, size_t ia, size_t ic) {
    const Pt& a = ring[ia];
    const Pt& c = ring[ic];
    size_t n = ring.size();
    for (size_t j = 0; j < n; ++j) {
        size_t j2 = (j + 1) % n;
        if (j == ia || j == ic || j2 == ia || j2 == ic) {
            // incident by index: may touch only at the shared endpoint
            for (auto& p : segment_intersection_points(a, c, ring[j], ring[j2]))
                if (!(p == a) && !(p == c)) return false;
            continue;
        }
        if (segments_intersect(a, c, ring[j], ring[j2])) {
            // touching exactly at a or c is fine (duplicate bridge vertices)
            for (auto& p : segment_intersection_points(a, c, ring[j], ring[j2]))
                if (!(p == a) && !(p == c)) return false;
        }
    }
    return true;
}

/// Ear clipping on a (weakly) simple CCW ring; tolerates duplicated bridge
/// vertices. Zero-area ears are retracted without emitting triangles.
inline std::vector<Triangle> ear_clip(Ring ring) {
    std::vector<Triangle> out;
    auto retract_spikes = [&ring]() {
        bool changed = true;
        while (changed && ring.size() >= 3) {
            changed = false;
            size_t n = ring.size();
            for (size_t i = 0; i < n; ++i) {
                const Pt& prev = ring[(i + n - 1) % n];
                const Pt& next = ring[(i + 1) % n];
                if (prev == next) {  // pattern a,b,a
                    size_t bi = i, ai = (i + 1) % n;
                    if (bi < ai) {
                        ring.erase(ring.begin() + ai);
                        ring.erase(ring.begin() + bi);
                    } else {
                        ring.erase(ring.begin() + bi);
                        ring.erase(ring.begin() + ai);
                    }
                    changed = true;
                    break;
                }
            }
        }
    };
    while (true) {
        retract_spikes();
        size_t n = ring.size();
        if (n < 3) break;
        if (n == 3) {
            if (orient(ring[0], ring[1], ring[2]) > 0) out.push_back({ring[0], ring[1], ring[2]});
            break;
        }
        auto try_clip = [&](bool allow_flat) -> bool {
            for (size_t i = 0; i < n; ++i) {
                const Pt& a = ring[(i + n - 1) % n];
                const Pt& b = ring[i];
                const Pt& c = ring[(i + 1) % n];
                int o = orient(a, b, c);
                if (o < 0 || (o == 0 && !allow_flat)) continue;
                if (o == 0 && !on_segment(b, a, c)) continue;
                bool blocked = false;
                for (size_t j = 0; j < n && !blocked; ++j) {
                    const Pt& p = ring[j];
                    if (p == a || p == b || p == c) continue;
                    if (o > 0 && orient(a, b, p) >= 0 && orient(b, c, p) >= 0 &&
                        orient(c, a, p) >= 0)
                        blocked = true;
                }
                if (blocked) continue;
                if (!diagonal_clear(ring, (i + n - 1) % n, (i + 1) % n)) continue;
                if (o > 0) {
                    // the diagonal must run inside the polygon
                    Pt mid((a.x + c.x) / 2, (a.y + c.y) / 2);
                    if (point_in_ring(mid, ring) == Side::Out) continue;
                    out.push_back({a, b, c});
                }
                ring.erase(ring.begin() + i);
                return true;
            }
            return false;
        };
        if (try_clip(false)) continue;
        if (try_clip(true)) continue;
        throw InternalInvariantViolation("ear clipping stuck");
    }
    return out;
}

/// Splice holes into the outer ring with two-way bridges (classical
/// rightmost-vertex visible-vertex method).
inline Ring bridge_holes(const PolygonalDomain& d) {
    Ring merged = d.outer();
    std::vector<Ring> holes = d.holes();  // CW
    // rightmost holes first
    std::sort(holes.begin(), holes.end(), [](const Ring& h1, const Ring& h2) {
        Pt m1 = h1[0], m2 = h2[0];
        for (auto& p : h1)
            if (p.x > m1.x || (p.x == m1.x && p.y > m1.y)) m1 = p;
        for (auto& p : h2)
            if (p.x > m2.x || (p.x == m2.x && p.y > m2.y)) m2 = p;
        return m2 < m1;
    });
    for (auto& hole : holes) {
        size_t mi = 0;
        for (size_t i = 1; i < hole.size(); ++i)
            if (hole[i].x > hole[mi].x || (hole[i].x == hole[mi].x && hole[i].y > hole[mi].y))
                mi = i;
        const Pt M = hole[mi];
        // closest ray hit to the right of M on the merged ring
        std::optional<Rat> best_x;
        size_t hit_edge = 0;
        std::optional<size_t> hit_vertex;
        size_t n = merged.size();
        for (size_t j = 0; j < n; ++j) {
            const Pt& a = merged[j];
            const Pt& b = merged[(j + 1) % n];
            if (a.y == M.y && a.x >= M.x) {
                if (!best_x || a.x < *best_x) {
                    best_x = a.x;
                    hit_vertex = j;
                }
                continue;
            }
            if ((a.y < M.y) == (b.y < M.y)) continue;
            if (a.y == M.y || b.y == M.y) {
                // only the vertex-on-ray endpoint matters; handled above
                continue;
            }
            Rat t = (M.y - a.y) / (b.y - a.y);
            Rat x = a.x + t * (b.x - a.x);
            if (x >= M.x && (!best_x || x < *best_x)) {
                best_x = x;
                hit_edge = j;
                hit_vertex.reset();
            }
        }
        if (!best_x) throw InternalInvariantViolation("hole bridging: no ray hit");
        size_t bridge_to;
        if (hit_vertex) {
            bridge_to = *hit_vertex;
        } else {
            Pt I(*best_x, M.y);
            const Pt& A = merged[hit_edge];
            const Pt& B = merged[(hit_edge + 1) % n];
            size_t pi = (A.x > B.x) ? hit_edge : (hit_edge + 1) % n;
            const Pt& P = merged[pi];
            // reflex merged-ring vertices inside triangle (M, I, P) may block
            bridge_to = pi;
            std::optional<Rat> best_metric;  // smaller slope to +x ray, then closer
            for (size_t j = 0; j < n; ++j) {
                const Pt& prev = merged[(j + n - 1) % n];
                const Pt& cur = merged[j];
                const Pt& next = merged[(j + 1) % n];
                if (orient(prev, cur, next) >= 0) continue;  // convex or straight
                if (cur == M || cur == I || cur == P) continue;
                if (orient(M, I, cur) < 0 || orient(I, P, cur) < 0 || orient(P, M, cur) < 0)
                    continue;
                if (cur.x <= M.x) continue;
                Rat slope = rat_abs(cur.y - M.y) / (cur.x - M.x);
                if (!best_metric || slope < *best_metric ||
                    (slope == *best_metric && cur.x < merged[bridge_to].x)) {
                    best_metric = slope;
                    bridge_to = j;
                }
            }
        }
        // splice: ... V, M, hole(CW from M), M, V, ...
        Ring next_ring;
        for (size_t j = 0; j <= bridge_to; ++j) next_ring.push_back(merged[j]);
        for (size_t k = 0; k <= hole.size(); ++k) next_ring.push_back(hole[(mi + k) % hole.size()]);
        for (size_t j = bridge_to; j < n; ++j) next_ring.push_back(merged[j]);
        merged = std::move(next_ring);
    }
    return merged;
}

}  // namespace detail

/// Exact triangulation of the closed domain with dual adjacency.
inline Triangulation triangulate_domain(const PolygonalDomain& d) {
    Ring merged = detail::bridge_holes(d);
    Triangulation T;
    T.tris = detail::ear_clip(merged);
    T.adj.assign(T.tris.size(), {-1, -1, -1});
    T.boundary_edge.assign(T.tris.size(), {false, false, false});
    std::map<std::pair<Pt, Pt>, std::vector<std::pair<int, int>>> by_edge;
    for (size_t t = 0; t < T.tris.size(); ++t) {
        for (int k = 0; k < 3; ++k) {
            Pt u = T.tris[t].vertex(k), v = T.tris[t].vertex((k + 1) % 3);
            if (v < u) std::swap(u, v);
            by_edge[{u, v}].push_back({(int)t, k});
        }
    }
    for (auto& [e, users] : by_edge) {
        if (users.size() == 2) {
            T.adj[users[0].first][users[0].second] = users[1].first;
            T.adj[users[1].first][users[1].second] = users[0].first;
        } else if (users.size() > 2) {
            throw InternalInvariantViolation("triangulation edge shared by >2 triangles");
        }
    }
    // boundary edges: lie on a domain edge (bridge doubles are interior)
    for (size_t t = 0; t < T.tris.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            if (T.adj[t][k] != -1) continue;
            T.boundary_edge[t][k] = true;
        }
    return T;
}

/// Triangulates a simple CCW polygon (no holes).
inline Triangulation triangulate_ring(const Ring& ring) {
    Ring r = ring;
    if (ring_signed_area2(r) < 0) std::reverse(r.begin(), r.end());
    Triangulation T;
    T.tris = detail::ear_clip(r);
    T.adj.assign(T.tris.size(), {-1, -1, -1});
    T.boundary_edge.assign(T.tris.size(), {false, false, false});
    std::map<std::pair<Pt, Pt>, std::vector<std::pair<int, int>>> by_edge;
    for (size_t t = 0; t < T.tris.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            Pt u = T.tris[t].vertex(k), v = T.tris[t].vertex((k + 1) % 3);
            if (v < u) std::swap(u, v);
            by_edge[{u, v}].push_back({(int)t, k});
        }
    for (auto& [e, users] : by_edge)
        if (users.size() == 2) {
            T.adj[users[0].first][users[0].second] = users[1].first;
            T.adj[users[1].first][users[1].second] = users[0].first;
        }
    for (size_t t = 0; t < T.tris.size(); ++t)
        for (int k = 0; k < 3; ++k)
            if (T.adj[t][k] == -1) T.boundary_edge[t][k] = true;
    return T;
}

}  // namespace l1geo
