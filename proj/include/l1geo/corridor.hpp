#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "l1geo/funnel.hpp"
#include "l1geo/subdivision.hpp"
#include "l1geo/triangulate.hpp"
#include "l1geo/visgraph.hpp"

namespace l1geo {

struct Corridor {
    std::vector<int> tris;  // chain; may be empty (two junctions sharing an edge)
    int junction1 = -1, junction2 = -1;
    Seg door1, door2;       // door1 = (b, e), door2 = (f, a) per the ring walk
    Ring sleeve;            // simple polygon (chain union); empty when tris empty
    // indices into sleeve: door1 = (b_i, e_i), door2 = (f_i, a_i)
    int b_i = -1, e_i = -1, f_i = -1, a_i = -1;
};

struct Hourglass {
    int corridor = -1;
    PolyPath side_ab, side_ef;  // Euclidean geodesics inside the corridor
    bool open = true;
    PolyPath corridor_path;  // closed case: shared subpath, terminal_x first
    Pt terminal_x, terminal_y;  // x at the door1 funnel, y at door2
};

struct Pocket {
    enum class Kind { Bay, Canal } kind = Kind::Bay;
    Ring ring;                  // closed simple polygon (CCW), gates included
    std::vector<Seg> gates;     // 1 for bays, 2 for canals
    std::vector<int> facing;    // domain ring ids this pocket shares boundary with
    int corridor = -1;
    Pt terminal_x, terminal_y;  // canal only

    bool interior_contains(const Pt& p) const { return point_in_ring(p, ring) == Side::In; }
};

struct ConvexPiece {
    Ring poly;      // CCW convex
    int component;  // index of the P' \ M component it partitions
    std::vector<Pt> core_vertices;  // extreme vertices + corridor terminals, in boundary order
};

struct OceanStructure {
    Ring outer;                 // CCW outer ring of M
    std::vector<Ring> islands;  // CW rings (holes of M)
    std::vector<Ring> components;  // components of P' \ M (islands + outer-attached pockets)
    std::vector<ConvexPiece> pieces;
    std::vector<Ring> cores;  // merged per-component cores, CW (obstacles)
    std::vector<PolyPath> corridor_paths;
    std::vector<std::pair<std::pair<Pt, Pt>, Rat>> shortcuts;  // terminal pair -> path length

    PolygonalDomain as_domain() const {
        std::vector<Ring> holes = islands;
        return PolygonalDomain::from_rings(outer, holes);
    }

    /// P_core: holes replaced by cores, corridor paths as walls + shortcuts.
    Environment core_environment(const Ring& domain_outer) const {
        Environment e;
        e.outer = domain_outer;
        e.solids = cores;
        for (auto& p : corridor_paths)
            if (p.size() >= 2) e.walls.push_back(p);
        e.shortcuts = shortcuts;
        return e;
    }
};

struct CorridorStructure {
    Triangulation tri;
    std::vector<int> junctions;         // triangle ids
    std::vector<Corridor> corridors;
    std::vector<Hourglass> hourglasses; // parallel to corridors (skipped => default)
    std::vector<Pocket> pockets;
    OceanStructure ocean;

    /// p in the closed domain, outside every pocket (gates belong to the ocean).
    bool in_ocean(const Pt& p, const PolygonalDomain& P) const {
        if (!P.contains(p)) return false;
        for (auto& pk : pockets) {
            Side s = point_in_ring(p, pk.ring);
            if (s == Side::Out) continue;
            if (s == Side::In) return false;
            bool on_gate = false;
            for (auto& g : pk.gates)
                if (on_segment(p, g.a, g.b)) on_gate = true;
            if (!on_gate) return false;  // on the pocket's obstacle arc
        }
        return true;
    }

    std::vector<Pt> corridor_path_terminals() const {
        std::vector<Pt> t;
        for (auto& h : hourglasses)
            if (!h.open) {
                t.push_back(h.terminal_x);
                t.push_back(h.terminal_y);
            }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        return t;
    }
};

namespace detail {

inline std::pair<Pt, Pt> tri_shared_edge(const Triangulation& T, int t1, int t2) {
    for (int k = 0; k < 3; ++k)
        if (T.adj[t1][k] == t2) return {T.tris[t1].vertex(k), T.tris[t1].vertex((k + 1) % 3)};
    throw InternalInvariantViolation("triangles not adjacent");
}

/// Splits a CCW ring along the chord (ring[vi], h); h may be a vertex of the
/// ring or lie in the interior of edge he.
inline std::pair<Ring, Ring> split_ring(const Ring& ring, size_t vi, const Pt& h, size_t he) {
    Ring r = ring;
    size_t hi;
    if (h == r[he]) {
        hi = he;
    } else if (h == r[(he + 1) % r.size()]) {
        hi = (he + 1) % r.size();
    } else {
        hi = he + 1;
        r.insert(r.begin() + hi, h);
        if (vi > he) ++vi;
    }
    Ring p1, p2;
    for (size_t i = vi;; i = (i + 1) % r.size()) {
        p1.push_back(r[i]);
        if (i == hi) break;
    }
    for (size_t i = hi;; i = (i + 1) % r.size()) {
        p2.push_back(r[i]);
        if (i == vi) break;
    }
    return {p1, p2};
}

/// Convex partition by extending one incident edge through each reflex vertex.
inline std::vector<Ring> convex_partition(const Ring& poly) {
    std::vector<Ring> work{poly}, done;
    if (ring_signed_area2(work[0]) < 0) std::reverse(work[0].begin(), work[0].end());
    while (!work.empty()) {
        Ring r = work.back();
        work.pop_back();
        size_t n = r.size();
        std::optional<size_t> reflex;
        for (size_t i = 0; i < n && !reflex; ++i)
            if (orient(r[(i + n - 1) % n], r[i], r[(i + 1) % n]) < 0) reflex = i;
        if (!reflex) {
            done.push_back(r);
            continue;
        }
        size_t vi = *reflex;
        const Pt& u = r[(vi + n - 1) % n];
        const Pt& v = r[vi];
        Pt d(v.x - u.x, v.y - u.y);
        // first boundary hit of the ray v + t*d, t > 0
        std::optional<Rat> best_t;
        Pt hit;
        size_t hit_edge = 0;
        BBox bb = bbox_of(r);
        Rat span = (bb.xmax - bb.xmin) + (bb.ymax - bb.ymin);
        Rat scale = span / (rat_abs(d.x) + rat_abs(d.y)) + 1;
        Pt far(v.x + d.x * scale, v.y + d.y * scale);
        for (size_t j = 0; j < n; ++j) {
            if (j == (vi + n - 1) % n || j == vi) continue;  // edges incident to v
            for (auto& p : segment_intersection_points(v, far, r[j], r[(j + 1) % n])) {
                if (p == v) continue;
                Rat t = (d.x != 0) ? (p.x - v.x) / d.x : (p.y - v.y) / d.y;
                if (t <= 0) continue;
                if (!best_t || t < *best_t) {
                    best_t = t;
                    hit = p;
                    hit_edge = j;
                }
            }
        }
        if (!best_t) throw InternalInvariantViolation("convex partition: ray found no exit");
        auto [p1, p2] = split_ring(r, vi, hit, hit_edge);
        for (Ring* piece : {&p1, &p2}) {
            Ring clean;
            for (auto& p : *piece)
                if (clean.empty() || !(clean.back() == p)) clean.push_back(p);
            while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
            if (clean.size() >= 3 && rat_sign(ring_signed_area2(clean)) != 0)
                work.push_back(clean);
        }
    }
    return done;
}

/// Boundary ring of a union of triangles (edges with multiplicity 1,
/// directed by their owning triangle's CCW order). Handles pinch vertices by
/// the clockwise-next face-walk rule; the region stays on the left.
inline Ring walk_triangle_union_boundary(const Triangulation& T, const std::vector<int>& tris) {
    std::map<std::pair<Pt, Pt>, int> count;
    for (int t : tris)
        for (int k = 0; k < 3; ++k) {
            Pt u = T.tris[t].vertex(k), v = T.tris[t].vertex((k + 1) % 3);
            Pt a = u, b = v;
            if (b < a) std::swap(a, b);
            count[{a, b}]++;
        }
    std::vector<std::pair<Pt, Pt>> dir;  // directed boundary edges
    for (int t : tris)
        for (int k = 0; k < 3; ++k) {
            Pt u = T.tris[t].vertex(k), v = T.tris[t].vertex((k + 1) % 3);
            Pt a = u, b = v;
            if (b < a) std::swap(a, b);
            if (count[{a, b}] == 1) dir.push_back({u, v});
        }
    if (dir.empty()) throw InternalInvariantViolation("triangle union has no boundary");
    std::map<Pt, std::vector<size_t>> outgoing;
    for (size_t e = 0; e < dir.size(); ++e) outgoing[dir[e].first].push_back(e);
    auto cw_next = [&](const Pt& at, const Pt& back) -> size_t {
        // outgoing edge at 'at' with the largest CCW angle from (at->back),
        // i.e. the clockwise-next one; keeps the region on the left
        auto& outs = outgoing.at(at);
        Pt ref(back.x - at.x, back.y - at.y);
        auto angle_class = [&](const Pt& d) {
            Rat cr = ref.x * d.y - ref.y * d.x;
            Rat dt = ref.x * d.x + ref.y * d.y;
            if (cr == 0) return dt > 0 ? 4 : 2;  // same direction -> full turn
            return cr > 0 ? 1 : 3;
        };
        size_t best = outs[0];
        for (size_t i = 1; i < outs.size(); ++i) {
            Pt d1(dir[outs[i]].second.x - at.x, dir[outs[i]].second.y - at.y);
            Pt d2(dir[best].second.x - at.x, dir[best].second.y - at.y);
            int c1 = angle_class(d1), c2 = angle_class(d2);
            bool better;
            if (c1 != c2) better = c1 > c2;
            else better = d2.x * d1.y - d2.y * d1.x > 0;  // d1 CCW-after d2
            if (better) best = outs[i];
        }
        return best;
    };
    std::vector<char> used(dir.size(), 0);
    Ring ring;
    size_t cur = 0;
    for (size_t e = 1; e < dir.size(); ++e)
        if (dir[e] < dir[cur]) cur = e;
    size_t start = cur;
    do {
        used[cur] = 1;
        ring.push_back(dir[cur].first);
        const Pt& at = dir[cur].second;
        const Pt& back = dir[cur].first;
        auto& outs = outgoing.at(at);
        if (outs.size() == 1)
            cur = outs[0];
        else
            cur = cw_next(at, back);
    } while (cur != start);
    for (size_t e = 0; e < dir.size(); ++e)
        if (!used[e]) throw InternalInvariantViolation("triangle union boundary is not one cycle");
    return ring;
}

/// j in the cyclic interval [start, end) of ring indices.
inline bool on_cyclic_arc(int start, int end, int j, size_t n) {
    if (start == end) return false;
    int span = (end - start + (int)n) % (int)n;
    int off = (j - start + (int)n) % (int)n;
    return off < span;
}

/// Merge collinear gate sub-edges that share endpoints back into whole gates.
inline std::vector<Seg> merge_collinear(std::vector<Seg> segs) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < segs.size() && !changed; ++i)
            for (size_t j = i + 1; j < segs.size() && !changed; ++j) {
                Pt* join = nullptr;
                Pt end1, end2;
                if (segs[i].b == segs[j].a) { end1 = segs[i].a; end2 = segs[j].b; join = &segs[i].b; }
                else if (segs[i].b == segs[j].b) { end1 = segs[i].a; end2 = segs[j].a; join = &segs[i].b; }
                else if (segs[i].a == segs[j].a) { end1 = segs[i].b; end2 = segs[j].b; join = &segs[i].a; }
                else if (segs[i].a == segs[j].b) { end1 = segs[i].b; end2 = segs[j].a; join = &segs[i].a; }
                if (join && orient(end1, *join, end2) == 0 && on_segment(*join, end1, end2)) {
                    segs[i] = Seg(end1, end2);
                    segs.erase(segs.begin() + j);
                    changed = true;
                }
            }
    }
    return segs;
}

inline void flag_axis_extremes(const Ring& ring, std::vector<Pt>& out) {
    size_t n = ring.size();
    auto scan = [&](auto coord) {
        for (size_t i = 0; i < n; ++i) {
            int before = 0, after = 0;
            for (size_t k = 1; k <= n && before == 0; ++k)
                before = rat_sign(coord(ring[i]) - coord(ring[(i + n - k) % n]));
            for (size_t k = 1; k <= n && after == 0; ++k)
                after = rat_sign(coord(ring[(i + k) % n]) - coord(ring[i]));
            if (before != 0 && after != 0 && before != after) out.push_back(ring[i]);
            // run ends adjacent to a flat stretch
            if (before != 0 && after == 0) out.push_back(ring[i]);
            if (before == 0 && after != 0) out.push_back(ring[i]);
        }
    };
    scan([](const Pt& p) { return p.x; });
    scan([](const Pt& p) { return p.y; });
}

}  // namespace detail

/// Builds the full extended corridor structure of the domain.
inline CorridorStructure build_corridor_structure(const PolygonalDomain& P) {
    CorridorStructure S;
    S.tri = triangulate_domain(P);
    const Triangulation& T = S.tri;
    size_t nt = T.tris.size();

    // ---- 3-regular reduction of the dual graph ----
    std::vector<int> degree(nt, 0);
    std::vector<char> alive(nt, 1);
    for (size_t t = 0; t < nt; ++t)
        for (int k = 0; k < 3; ++k)
            if (T.adj[t][k] >= 0) degree[t]++;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t t = 0; t < nt; ++t) {
            if (alive[t] && degree[t] <= 1) {
                alive[t] = 0;
                changed = true;
                for (int k = 0; k < 3; ++k) {
                    int nb = T.adj[t][k];
                    if (nb >= 0 && alive[nb]) degree[nb]--;
                }
            }
        }
    }
    std::vector<char> is_junction(nt, 0);
    for (size_t t = 0; t < nt; ++t)
        if (alive[t] && degree[t] == 3) {
            is_junction[t] = 1;
            S.junctions.push_back((int)t);
        }
    if (S.junctions.empty()) {
        // h <= 1: either nothing remains (h = 0) or a single cycle (h = 1)
        for (size_t t = 0; t < nt; ++t)
            if (alive[t]) {
                is_junction[t] = 1;
                S.junctions.push_back((int)t);
                break;
            }
    }
    if (S.junctions.empty()) {
        // h = 0: the whole domain is one corridor-free ocean
        S.ocean.outer = P.outer();
        for (auto& h : P.holes()) S.ocean.islands.push_back(h);
        return S;
    }

    // corridors: connected components of all non-junction triangles (the
    // pruned tree appendages belong to their corridor: their zigzags become
    // bays). Each component attaches to junctions via exactly two doors.
    std::vector<char> seen(nt, 0);
    for (size_t t0 = 0; t0 < nt; ++t0) {
        if (seen[t0] || is_junction[t0]) continue;
        Corridor c;
        std::vector<int> stack{(int)t0};
        seen[t0] = 1;
        std::vector<std::pair<int, int>> doors;  // (component tri, junction)
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            c.tris.push_back(t);
            for (int k = 0; k < 3; ++k) {
                int nb = T.adj[t][k];
                if (nb < 0) continue;
                if (is_junction[nb]) {
                    doors.push_back({t, nb});
                } else if (!seen[nb]) {
                    seen[nb] = 1;
                    stack.push_back(nb);
                }
            }
        }
        std::sort(c.tris.begin(), c.tris.end());
        if (doors.size() != 2)
            throw InternalInvariantViolation("corridor component with != 2 doors");
        c.junction1 = doors[0].second;
        c.junction2 = doors[1].second;
        auto e1 = detail::tri_shared_edge(T, doors[0].first, doors[0].second);
        auto e2 = detail::tri_shared_edge(T, doors[1].first, doors[1].second);
        c.door1 = Seg(e1.first, e1.second);
        c.door2 = Seg(e2.first, e2.second);
        S.corridors.push_back(std::move(c));
    }
    // direct junction-junction adjacencies: empty corridors
    for (int j : S.junctions)
        for (int k = 0; k < 3; ++k) {
            int nb = T.adj[j][k];
            if (nb >= 0 && is_junction[nb] && j < nb) {
                Corridor c;
                c.junction1 = j;
                c.junction2 = nb;
                auto [u, v] = detail::tri_shared_edge(T, j, nb);
                c.door1 = Seg(u, v);
                c.door2 = c.door1;
                S.corridors.push_back(std::move(c));
            }
        }

    // ---- hourglasses, bays, canals per corridor ----
    S.hourglasses.assign(S.corridors.size(), Hourglass{});
    auto edge_ring_id = [&](const Pt& a, const Pt& b) -> int {
        Pt mid((a.x + b.x) / 2, (a.y + b.y) / 2);
        for (auto& e : P.edges())
            if (on_segment(mid, e.a, e.b) && on_segment(a, e.a, e.b) && on_segment(b, e.a, e.b))
                return e.ring;
        return -1;
    };
    std::vector<std::vector<Ring>> ocean_faces_per_corridor(S.corridors.size());
    for (size_t ci = 0; ci < S.corridors.size(); ++ci) {
        Corridor& K = S.corridors[ci];
        Hourglass& H = S.hourglasses[ci];
        H.corridor = (int)ci;
        if (K.tris.empty()) continue;
        K.sleeve = detail::walk_triangle_union_boundary(T, K.tris);
        size_t n = K.sleeve.size();
        auto locate_door = [&](const Seg& door, std::optional<size_t> avoid)
            -> std::optional<size_t> {
            for (size_t j = 0; j < n; ++j) {
                if (avoid && j == *avoid) continue;
                const Pt& p = K.sleeve[j];
                const Pt& q = K.sleeve[(j + 1) % n];
                if ((p == door.a && q == door.b) || (p == door.b && q == door.a)) return j;
            }
            return std::nullopt;
        };
        auto d1 = locate_door(K.door1, std::nullopt);
        if (!d1) throw InternalInvariantViolation("door1 not found on sleeve");
        auto d2 = locate_door(K.door2, d1);
        if (!d2) throw InternalInvariantViolation("door2 not found on sleeve");
        K.b_i = (int)*d1;
        K.e_i = (int)((*d1 + 1) % n);
        K.f_i = (int)*d2;
        K.a_i = (int)((*d2 + 1) % n);
        K.door1 = Seg(K.sleeve[K.b_i], K.sleeve[K.e_i]);
        K.door2 = Seg(K.sleeve[K.f_i], K.sleeve[K.a_i]);

        SimplePolygonGeodesics geo(K.sleeve);
        const Pt &a = K.sleeve[K.a_i], &b = K.sleeve[K.b_i];
        const Pt &e = K.sleeve[K.e_i], &f = K.sleeve[K.f_i];
        H.side_ab = geo.shortest_path(a, b);
        H.side_ef = geo.shortest_path(e, f);

        // shared subpath = corridor path (endpoints included)
        std::set<Pt> ab_set(H.side_ab.begin(), H.side_ab.end());
        PolyPath shared;
        for (auto& p : H.side_ef)
            if (ab_set.count(p)) shared.push_back(p);
        H.open = shared.empty();
        if (!H.open) {
            // orient shared path so it starts at the door1-side apex:
            // side_ef runs e..f, i.e. from door1 to door2, so shared is x..y
            H.corridor_path = shared;
            H.terminal_x = shared.front();
            H.terminal_y = shared.back();
        }

        // chord subdivision of the sleeve
        Subdivision sub;
        for (size_t j = 0; j < n; ++j) {
            const Pt& p = K.sleeve[j];
            const Pt& q = K.sleeve[(j + 1) % n];
            int tag;
            if ((int)j == K.b_i || (int)j == K.f_i) tag = 0;  // doors
            else if (detail::on_cyclic_arc(K.e_i, K.f_i, (int)j, n)) tag = 2;  // e..f side
            else tag = 1;  // a..b side
            sub.add_segment(p, q, tag);
        }
        std::set<std::pair<Pt, Pt>> ring_edges, shared_edges;
        for (size_t j = 0; j < n; ++j) {
            Pt p = K.sleeve[j], q = K.sleeve[(j + 1) % n];
            if (q < p) std::swap(p, q);
            ring_edges.insert({p, q});
        }
        auto path_edges = [](const PolyPath& path) {
            std::set<std::pair<Pt, Pt>> es;
            for (size_t i = 0; i + 1 < path.size(); ++i) {
                Pt p = path[i], q = path[i + 1];
                if (q < p) std::swap(p, q);
                es.insert({p, q});
            }
            return es;
        };
        auto ab_edges = path_edges(H.side_ab);
        auto ef_edges = path_edges(H.side_ef);
        for (auto& e2 : ab_edges)
            if (ef_edges.count(e2)) shared_edges.insert(e2);
        for (auto& es : {ab_edges, ef_edges})
            for (auto& e2 : es)
                if (!ring_edges.count(e2) && !shared_edges.count(e2))
                    sub.add_segment(e2.first, e2.second, 3);
        sub.build();

        for (auto& face : sub.faces()) {
            if (!face.bounded) continue;
            // self-loop sleeves wind around their hole: skip its interior face
            if (point_in_ring(face.inside, K.sleeve) != Side::In) continue;
            bool has_door = false, has_i = false, has_j = false;
            std::vector<Seg> gates;
            for (size_t k = 0; k < face.nodes.size(); ++k) {
                const Pt& p = face.poly[k];
                const Pt& q = face.poly[(k + 1) % face.poly.size()];
                int tag = sub.edge_tag(face.nodes[k], face.nodes[(k + 1) % face.nodes.size()]);
                if (tag == 0) has_door = true;
                else if (tag == 1) has_i = true;
                else if (tag == 2) has_j = true;
                else if (tag == 3) gates.push_back(Seg(p, q));
            }
            if (has_door) {
                ocean_faces_per_corridor[ci].push_back(face.poly);
                continue;
            }
            Pocket pk;
            pk.ring = face.poly;
            pk.corridor = (int)ci;
            pk.gates = detail::merge_collinear(gates);
            pk.kind = (has_i && has_j) ? Pocket::Kind::Canal : Pocket::Kind::Bay;
            if (pk.kind == Pocket::Kind::Canal) {
                pk.terminal_x = H.terminal_x;
                pk.terminal_y = H.terminal_y;
            }
            for (size_t k = 0; k < face.poly.size(); ++k) {
                const Pt& p = face.poly[k];
                const Pt& q = face.poly[(k + 1) % face.poly.size()];
                int rid = edge_ring_id(p, q);
                if (rid >= 0 &&
                    std::find(pk.facing.begin(), pk.facing.end(), rid) == pk.facing.end())
                    pk.facing.push_back(rid);
            }
            if (pk.gates.empty())
                throw InternalInvariantViolation("pocket without a gate");
            S.pockets.push_back(std::move(pk));
        }
    }

    // ---- ocean region: boundary-edge parity over junction triangles + ocean faces ----
    std::map<std::pair<Pt, Pt>, int> edge_count;
    auto count_ring_edges = [&edge_count](const Ring& r) {
        for (size_t i = 0; i < r.size(); ++i) {
            Pt p = r[i], q = r[(i + 1) % r.size()];
            if (q < p) std::swap(p, q);
            edge_count[{p, q}]++;
        }
    };
    for (int j : S.junctions)
        count_ring_edges(Ring{T.tris[j].a, T.tris[j].b, T.tris[j].c});
    for (auto& faces : ocean_faces_per_corridor)
        for (auto& f : faces) count_ring_edges(f);
    Subdivision msub;
    int seg_id = 0;
    for (auto& [e, cnt] : edge_count) {
        if (cnt == 1) msub.add_segment(e.first, e.second, seg_id++);
        else if (cnt != 2)
            throw InternalInvariantViolation("ocean boundary edge with count > 2");
    }
    msub.build();
    std::optional<size_t> outer_face;
    for (size_t fi = 0; fi < msub.faces().size(); ++fi) {
        if (!msub.faces()[fi].bounded) continue;
        if (!outer_face || msub.faces()[fi].area2 > msub.faces()[*outer_face].area2)
            outer_face = fi;
    }
    if (!outer_face) throw InternalInvariantViolation("ocean has no outer ring");
    S.ocean.outer = msub.faces()[*outer_face].poly;
    for (size_t fi = 0; fi < msub.faces().size(); ++fi) {
        if (!msub.faces()[fi].bounded || fi == *outer_face) continue;
        Ring island = msub.faces()[fi].poly;
        std::reverse(island.begin(), island.end());
        S.ocean.islands.push_back(island);  // CW hole of M
    }

    // components of P' \ M: pockets and holes glued along shared hole arcs
    {
        int nh = (int)P.holes().size();
        int items = nh + (int)S.pockets.size();
        std::vector<int> uf(items);
        for (int i = 0; i < items; ++i) uf[i] = i;
        std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
        for (size_t k = 0; k < S.pockets.size(); ++k)
            for (int rid : S.pockets[k].facing)
                if (rid >= 1) uf[find(nh + (int)k)] = find(rid - 1);
        std::map<int, std::vector<const Ring*>> classes;
        std::vector<Ring> hole_rings;
        for (auto& h : P.holes()) {
            Ring ccw = h;
            std::reverse(ccw.begin(), ccw.end());
            hole_rings.push_back(ccw);
        }
        for (int i = 0; i < nh; ++i) classes[find(i)].push_back(&hole_rings[i]);
        for (size_t k = 0; k < S.pockets.size(); ++k)
            classes[find(nh + (int)k)].push_back(&S.pockets[k].ring);
        for (auto& [root, rings] : classes) {
            if (rings.size() == 1) {
                S.ocean.components.push_back(*rings[0]);
                continue;
            }
            // boundary of the glued region: sub-edges with odd multiplicity
            std::vector<Pt> pts;
            for (auto* r : rings) pts.insert(pts.end(), r->begin(), r->end());
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            std::map<std::pair<Pt, Pt>, int> count;
            for (auto* r : rings) {
                for (size_t i = 0; i < r->size(); ++i) {
                    const Pt& a = (*r)[i];
                    const Pt& b = (*r)[(i + 1) % r->size()];
                    std::vector<Pt> on{a, b};
                    for (auto& p : pts)
                        if (!(p == a) && !(p == b) && on_segment(p, a, b)) on.push_back(p);
                    Pt d(b.x - a.x, b.y - a.y);
                    std::sort(on.begin(), on.end(), [&](const Pt& p, const Pt& q) {
                        return d.x * (p.x - a.x) + d.y * (p.y - a.y) <
                               d.x * (q.x - a.x) + d.y * (q.y - a.y);
                    });
                    for (size_t j = 0; j + 1 < on.size(); ++j) {
                        Pt u = on[j], v = on[j + 1];
                        if (v < u) std::swap(u, v);
                        count[{u, v}]++;
                    }
                }
            }
            Subdivision csub;
            int cid = 0;
            for (auto& [e, c] : count)
                if (c % 2 == 1) csub.add_segment(e.first, e.second, cid++);
            csub.build();
            for (auto& f : csub.faces())
                if (f.bounded) S.ocean.components.push_back(f.poly);
        }
    }

    // ---- corridor paths + shortcuts ----
    for (auto& H : S.hourglasses)
        if (H.corridor >= 0 && !H.open && H.corridor_path.size() >= 1) {
            S.ocean.corridor_paths.push_back(H.corridor_path);
            if (H.corridor_path.size() >= 2)
                S.ocean.shortcuts.push_back(
                    {{H.terminal_x, H.terminal_y}, path_l1_length(H.corridor_path)});
        }

    // ---- convex pieces and cores ----
    std::vector<Pt> terminals = S.corridor_path_terminals();
    for (size_t comp = 0; comp < S.ocean.components.size(); ++comp) {
        const Ring& comp_ring = S.ocean.components[comp];
        auto on_component_boundary = [&](const Pt& u, const Pt& v) {
            Pt mid((u.x + v.x) / 2, (u.y + v.y) / 2);
            for (size_t i = 0; i < comp_ring.size(); ++i) {
                const Pt& a = comp_ring[i];
                const Pt& b = comp_ring[(i + 1) % comp_ring.size()];
                if (on_segment(u, a, b) && on_segment(v, a, b) && on_segment(mid, a, b))
                    return true;
            }
            return false;
        };
        for (auto& piece : detail::convex_partition(S.ocean.components[comp])) {
            ConvexPiece cp;
            cp.poly = piece;
            cp.component = (int)comp;
            std::set<Pt> marked;
            // internal cut edges must end up on the core boundary, otherwise
            // the core domain gains passages that the real domain forbids
            for (size_t i = 0; i < piece.size(); ++i) {
                const Pt& u = piece[i];
                const Pt& v = piece[(i + 1) % piece.size()];
                if (!on_component_boundary(u, v)) {
                    marked.insert(u);
                    marked.insert(v);
                }
            }
            auto mark_extreme = [&](auto better) {
                size_t best = 0;
                for (size_t i = 1; i < piece.size(); ++i)
                    if (better(piece[i], piece[best])) best = i;
                marked.insert(piece[best]);
            };
            mark_extreme([](const Pt& p, const Pt& q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
            mark_extreme([](const Pt& p, const Pt& q) { return p.x > q.x || (p.x == q.x && p.y > q.y); });
            mark_extreme([](const Pt& p, const Pt& q) { return p.y < q.y || (p.y == q.y && p.x < q.x); });
            mark_extreme([](const Pt& p, const Pt& q) { return p.y > q.y || (p.y == q.y && p.x > q.x); });
            for (auto& t : terminals) {
                if (marked.count(t)) continue;
                for (size_t i = 0; i < piece.size(); ++i)
                    if (on_segment(t, piece[i], piece[(i + 1) % piece.size()])) {
                        marked.insert(t);
                        break;
                    }
            }
            // core polygon: marked points in boundary order
            Ring core;
            for (size_t i = 0; i < piece.size(); ++i) {
                const Pt& pv = piece[i];
                const Pt& qv = piece[(i + 1) % piece.size()];
                std::vector<Pt> on_edge;
                for (auto& m : marked)
                    if (on_segment(m, pv, qv) && !(m == qv)) on_edge.push_back(m);
                std::sort(on_edge.begin(), on_edge.end(), [&](const Pt& r1, const Pt& r2) {
                    return l1_dist(pv, r1) < l1_dist(pv, r2);
                });
                for (auto& m : on_edge) core.push_back(m);
            }
            Ring dedup;
            for (auto& p : core)
                if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
            while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
            if (dedup.size() < 3 || rat_sign(ring_signed_area2(dedup)) == 0)
                dedup = piece;  // degenerate core: block the whole piece
            cp.core_vertices = dedup;
            S.ocean.pieces.push_back(std::move(cp));
        }
    }

    // merge each component's cores: shared cut edges cancel into the interior,
    // so no traversable seams remain between adjacent cores
    {
        std::map<int, std::map<std::pair<Pt, Pt>, int>> per_comp;
        for (auto& cp : S.ocean.pieces) {
            auto& count = per_comp[cp.component];
            const Ring& core = cp.core_vertices;
            for (size_t i = 0; i < core.size(); ++i) {
                Pt u = core[i], v = core[(i + 1) % core.size()];
                if (v < u) std::swap(u, v);
                count[{u, v}]++;
            }
        }
        for (auto& [comp, count] : per_comp) {
            Subdivision usub;
            int uid = 0;
            for (auto& [e, c] : count)
                if (c % 2 == 1) usub.add_segment(e.first, e.second, uid++);
            usub.build();
            for (auto& f : usub.faces()) {
                if (!f.bounded) continue;
                Ring cw = f.poly;
                std::reverse(cw.begin(), cw.end());
                S.ocean.cores.push_back(cw);
            }
        }
    }
    return S;
}

/// Diagonal sources for the ocean decomposition D_M: corridor-path terminals,
/// core vertices on the ocean boundary, and local axis extremes of the ocean
/// boundary chains (keeps boundary cells monotone).
inline std::vector<Pt> dm_diagonal_sources(const CorridorStructure& S) {
    std::vector<Pt> out = S.corridor_path_terminals();
    std::vector<const Ring*> rings{&S.ocean.outer};
    for (auto& isl : S.ocean.islands) rings.push_back(&isl);
    for (auto& piece : S.ocean.pieces)
        for (auto& cv : piece.core_vertices) {
            bool on_dm = false;
            for (auto* r : rings) {
                for (size_t i = 0; i < r->size() && !on_dm; ++i)
                    if (on_segment(cv, (*r)[i], (*r)[(i + 1) % r->size()])) on_dm = true;
                if (on_dm) break;
            }
            if (on_dm) out.push_back(cv);
        }
    for (auto* r : rings) detail::flag_axis_extremes(*r, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace l1geo
