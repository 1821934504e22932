#pragma once

#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "l1geo/geom.hpp"
#include "l1geo/triangulate.hpp"

namespace l1geo {

struct OutsidePolygon : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Euclidean funnel from a source vertex to a polygon edge: the union of
/// Euclidean geodesics from the source to every point of the base edge.
struct Funnel {
    Pt source;
    Pt apex;
    PolyPath prefix;    // geodesic source .. apex (both ends included)
    PolyPath chain_a;   // apex .. base.a
    PolyPath chain_b;   // apex .. base.b
    Seg base;
};

/// Piecewise-linear geodesic distance from a fixed point to a polygon edge,
/// parametrized by t in [0,1] along the edge.
struct GateDistFn {
    Seg gate;
    std::vector<Rat> breaks;          // 0 = t0 < ... < tk = 1
    std::vector<std::pair<Rat, Rat>> pieces;  // value = first*t + second on [t_i, t_i+1]

    Rat eval(const Rat& t) const {
        for (size_t i = 0; i + 1 < breaks.size(); ++i)
            if (t <= breaks[i + 1]) return pieces[i].first * t + pieces[i].second;
        return pieces.back().first * t + pieces.back().second;
    }
    Pt point_at(const Rat& t) const {
        return Pt(gate.a.x + t * (gate.b.x - gate.a.x), gate.a.y + t * (gate.b.y - gate.a.y));
    }
};

/// Geodesics inside one simple polygon (teeth of the pipeline: bays, canals,
/// corridors). Triangulates once, then answers shortest-path queries with the
/// funnel algorithm; all tests are orientation-based, no lengths compared.
class SimplePolygonGeodesics {
  public:
    explicit SimplePolygonGeodesics(Ring ring) : ring_(std::move(ring)) {
        if (ring_signed_area2(ring_) < 0) std::reverse(ring_.begin(), ring_.end());
        tri_ = triangulate_ring(ring_);
    }

    const Ring& ring() const { return ring_; }

    bool contains(const Pt& p) const { return point_in_ring(p, ring_) != Side::Out; }

    /// The unique Euclidean geodesic between p and q (also an L1 geodesic).
    PolyPath shortest_path(const Pt& p, const Pt& q) const {
        if (!contains(p) || !contains(q)) throw OutsidePolygon("query point outside polygon");
        if (p == q) return {p};
        int tp = tri_.find_containing(p), tq = tri_.find_containing(q);
        if (tp < 0 || tq < 0) throw OutsidePolygon("no containing triangle");
        if (tp == tq) return {p, q};
        std::vector<int> tri_path = dual_path(tp, tq);
        std::vector<std::pair<Pt, Pt>> portals;
        portals.push_back({p, p});
        // First portal oriented against the start triangle's opposite vertex;
        // later portals inherit sides through the vertex they share with the
        // previous one. (Centroid-based orientation is unsound near reflex
        // corners.)
        for (size_t i = 0; i + 1 < tri_path.size(); ++i) {
            auto [u, v] = shared_edge(tri_path[i], tri_path[i + 1]);
            if (i == 0) {
                const Triangle& t0 = tri_.tris[tri_path[0]];
                Pt w0 = t0.a;
                if ((t0.a == u && t0.b == v) || (t0.a == v && t0.b == u)) w0 = t0.c;
                else if ((t0.b == u && t0.c == v) || (t0.b == v && t0.c == u)) w0 = t0.a;
                else w0 = t0.b;
                Pt mid((u.x + v.x) / 2, (u.y + v.y) / 2);
                if (orient(w0, mid, u) > 0)
                    portals.push_back({u, v});
                else
                    portals.push_back({v, u});
            } else {
                const auto& prev = portals.back();
                if (u == prev.first || v == prev.first) {
                    // shared vertex stays on the left
                    Pt fresh = (u == prev.first) ? v : u;
                    portals.push_back({prev.first, fresh});
                } else {
                    Pt fresh = (u == prev.second) ? v : u;
                    portals.push_back({fresh, prev.second});
                }
            }
        }
        portals.push_back({q, q});
        return run_funnel(portals, q);
    }

    Rat l1_length(const Pt& p, const Pt& q) const { return path_l1_length(shortest_path(p, q)); }

    /// Funnel of geodesics from v to every point of edge (base.a, base.b).
    Funnel funnel_to_edge(const Pt& v, const Seg& base) const {
        PolyPath pa = shortest_path(v, base.a);
        PolyPath pb = shortest_path(v, base.b);
        size_t k = 0;
        while (k < pa.size() && k < pb.size() && pa[k] == pb[k]) ++k;
        // k = first divergence; apex = last common vertex
        Funnel f;
        f.source = v;
        f.base = base;
        f.apex = pa[k - 1];
        f.prefix.assign(pa.begin(), pa.begin() + k);
        f.chain_a.assign(pa.begin() + (k - 1), pa.end());
        f.chain_b.assign(pb.begin() + (k - 1), pb.end());
        return f;
    }

    /// f_v on the gate: L1 length of the Euclidean geodesic from v to gate(t).
    GateDistFn gate_distance_function(const Pt& v, const Seg& gate) const {
        Funnel f = funnel_to_edge(v, gate);
        GateDistFn out;
        out.gate = gate;
        Rat dx = gate.b.x - gate.a.x, dy = gate.b.y - gate.a.y;
        std::vector<Rat> cand{Rat(0), Rat(1)};
        auto add_param = [&](const Rat& t) {
            if (t > 0 && t < 1) cand.push_back(t);
        };
        auto line_hits = [&](const Pt& a, const Pt& b) {
            // gate param where line(a,b) crosses: cross(b-a, gate(t)-a) = 0
            Rat denom = (b.x - a.x) * dy - (b.y - a.y) * dx;
            if (denom == 0) return;
            Rat num = (b.x - a.x) * (gate.a.y - a.y) - (b.y - a.y) * (gate.a.x - a.x);
            add_param(-num / denom);
        };
        for (const PolyPath* chain : {&f.chain_a, &f.chain_b})
            for (size_t i = 0; i + 1 < chain->size(); ++i) line_hits((*chain)[i], (*chain)[i + 1]);
        std::vector<Pt> anchors;
        anchors.push_back(v);
        for (const PolyPath* chain : {&f.prefix, &f.chain_a, &f.chain_b})
            for (auto& w : *chain) anchors.push_back(w);
        for (auto& w : anchors) {
            if (dx != 0) add_param((w.x - gate.a.x) / dx);
            if (dy != 0) add_param((w.y - gate.a.y) / dy);
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        // reconstruct the affine piece on each interval from one interior probe
        for (size_t i = 0; i + 1 < cand.size(); ++i) {
            Rat tm = (cand[i] + cand[i + 1]) / 2;
            Pt xm(gate.a.x + tm * dx, gate.a.y + tm * dy);
            PolyPath path = shortest_path(v, xm);
            Pt w = path.size() >= 2 ? path[path.size() - 2] : v;
            Rat base_len = path_l1_length(path) - l1_dist(w, xm);
            int sx = rat_sign(xm.x - w.x), sy = rat_sign(xm.y - w.y);
            // |x(t)-w| with frozen signs: affine in t
            Rat slope = Rat(sx) * dx + Rat(sy) * dy;
            Rat c0 = base_len + Rat(sx) * (gate.a.x - w.x) + Rat(sy) * (gate.a.y - w.y);
            if (!out.breaks.empty() && !out.pieces.empty() && out.pieces.back().first == slope &&
                out.pieces.back().second == c0) {
                out.breaks.back() = cand[i + 1];  // merge equal pieces
            } else {
                if (out.breaks.empty()) out.breaks.push_back(cand[i]);
                out.breaks.push_back(cand[i + 1]);
                out.pieces.push_back({slope, c0});
            }
        }
        // continuity across breakpoints
        for (size_t i = 1; i + 1 < out.breaks.size(); ++i) {
            const Rat& t = out.breaks[i];
            Rat left = out.pieces[i - 1].first * t + out.pieces[i - 1].second;
            Rat right = out.pieces[i].first * t + out.pieces[i].second;
            if (left != right)
                throw InternalInvariantViolation("gate distance function discontinuous");
        }
        return out;
    }

    const Triangulation& triangulation() const { return tri_; }

  private:
    std::vector<int> dual_path(int from, int to) const {
        std::vector<int> parent(tri_.tris.size(), -2);
        std::deque<int> queue{from};
        parent[from] = -1;
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            if (t == to) break;
            for (int k = 0; k < 3; ++k) {
                int nb = tri_.adj[t][k];
                if (nb >= 0 && parent[nb] == -2) {
                    parent[nb] = t;
                    queue.push_back(nb);
                }
            }
        }
        if (parent[to] == -2) throw InternalInvariantViolation("triangulation dual disconnected");
        std::vector<int> path;
        for (int t = to; t != -1; t = parent[t]) path.push_back(t);
        std::reverse(path.begin(), path.end());
        return path;
    }

    std::pair<Pt, Pt> shared_edge(int t1, int t2) const {
        for (int k = 0; k < 3; ++k)
            if (tri_.adj[t1][k] == t2)
                return {tri_.tris[t1].vertex(k), tri_.tris[t1].vertex((k + 1) % 3)};
        throw InternalInvariantViolation("triangles not adjacent");
    }

    static PolyPath run_funnel(const std::vector<std::pair<Pt, Pt>>& portals, const Pt& goal) {
        PolyPath path;
        Pt apex = portals[0].first, left = apex, right = apex;
        size_t apex_i = 0, left_i = 0, right_i = 0;
        path.push_back(apex);
        for (size_t i = 1; i < portals.size(); ++i) {
            const Pt& pl = portals[i].first;
            const Pt& pr = portals[i].second;
            // tighten the right side: new point left-of-or-on (apex -> right)
            if (orient(apex, right, pr) >= 0) {
                if (apex == right || orient(apex, left, pr) < 0) {
                    right = pr;
                    right_i = i;
                } else {
                    // right sweeps over left: left chain vertex becomes the apex
                    path.push_back(left);
                    apex = left;
                    apex_i = left_i;
                    left = right = apex;
                    left_i = right_i = apex_i;
                    i = apex_i;
                    continue;
                }
            }
            // tighten the left side: new point right-of-or-on (apex -> left)
            if (orient(apex, left, pl) <= 0) {
                if (apex == left || orient(apex, right, pl) > 0) {
                    left = pl;
                    left_i = i;
                } else {
                    path.push_back(right);
                    apex = right;
                    apex_i = right_i;
                    left = right = apex;
                    left_i = right_i = apex_i;
                    i = apex_i;
                    continue;
                }
            }
        }
        if (!(path.back() == goal)) path.push_back(goal);
        // drop consecutive duplicates
        PolyPath clean;
        for (auto& p : path)
            if (clean.empty() || !(clean.back() == p)) clean.push_back(p);
        return clean;
    }

    Ring ring_;
    Triangulation tri_;
};

}  // namespace l1geo
