#pragma once

#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "l1geo/domain.hpp"
#include "l1geo/geom.hpp"

namespace l1geo {

/// Free space for the distance engine: a closed region (outer ring minus
/// solid interiors) plus 1-dimensional wall polylines that paths may touch
/// but not cross, plus weighted shortcut edges (corridor paths).
struct Environment {
    Ring outer;                // CCW
    std::vector<Ring> solids;  // interiors removed from the free space
    std::vector<PolyPath> walls;
    std::vector<std::pair<std::pair<Pt, Pt>, Rat>> shortcuts;

    static Environment from_domain(const PolygonalDomain& d) {
        Environment e;
        e.outer = d.outer();
        e.solids = d.holes();
        return e;
    }

    bool contains(const Pt& p) const {
        if (point_in_ring(p, outer) == Side::Out) return false;
        for (auto& s : solids)
            if (point_in_ring(p, s) == Side::In) return false;
        return true;
    }

    /// Closed-region visibility with wall semantics: crossing a wall segment
    /// interior is forbidden, grazing contact with anything is allowed.
    bool visible(const Pt& a, const Pt& b) const {
        if (!contains(a) || !contains(b)) return false;
        if (a == b) return true;
        std::vector<Rat> params{Rat(0), Rat(1)};
        auto consider_edge = [&](const Pt& u, const Pt& v) -> bool {
            if (segments_properly_cross(a, b, u, v)) return false;
            for (auto& p : segment_intersection_points(a, b, u, v)) params.push_back(param(a, b, p));
            return true;
        };
        for (size_t i = 0; i < outer.size(); ++i)
            if (!consider_edge(outer[i], outer[(i + 1) % outer.size()])) return false;
        for (auto& s : solids)
            for (size_t i = 0; i < s.size(); ++i)
                if (!consider_edge(s[i], s[(i + 1) % s.size()])) return false;
        for (auto& w : walls)
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (segments_properly_cross(a, b, w[i], w[i + 1])) return false;
        std::sort(params.begin(), params.end());
        params.erase(std::unique(params.begin(), params.end()), params.end());
        for (size_t i = 0; i + 1 < params.size(); ++i) {
            Rat t = (params[i] + params[i + 1]) / 2;
            if (!contains(Pt(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))) return false;
        }
        return true;
    }

    std::vector<Pt> obstacle_vertices() const {
        std::vector<Pt> out(outer.begin(), outer.end());
        for (auto& s : solids) out.insert(out.end(), s.begin(), s.end());
        for (auto& w : walls) out.insert(out.end(), w.begin(), w.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

  private:
    static Rat param(const Pt& a, const Pt& b, const Pt& p) {
        if (a.x != b.x) return (p.x - a.x) / (b.x - a.x);
        return (p.y - a.y) / (b.y - a.y);
    }
};

/// Symmetric exact distance table over an ordered vertex set.
struct DistTable {
    std::vector<Pt> points;
    std::vector<std::vector<Rat>> d;

    const Rat& at(size_t i, size_t j) const { return d[i][j]; }
    std::optional<size_t> index_of(const Pt& p) const {
        for (size_t i = 0; i < points.size(); ++i)
            if (points[i] == p) return i;
        return std::nullopt;
    }
};

/// Exact L1 geodesic distances via a visibility graph over the environment's
/// obstacle vertices (plus corridor shortcuts), queried from arbitrary points.
/// Any L1 shortest path can be straightened onto obstacle vertices without
/// increasing its length, so vertex-to-vertex Dijkstra with L1 weights is
/// exact; the track-graph oracle independently cross-checks this.
class DistanceEngine {
  public:
    explicit DistanceEngine(Environment env) : env_(std::move(env)) {
        nodes_ = env_.obstacle_vertices();
        size_t n = nodes_.size();
        adj_.assign(n, {});
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (env_.visible(nodes_[i], nodes_[j])) {
                    Rat w = l1_dist(nodes_[i], nodes_[j]);
                    adj_[i].push_back({j, w});
                    adj_[j].push_back({i, w});
                }
        for (auto& [pair, w] : env_.shortcuts) {
            auto i = node_index(pair.first), j = node_index(pair.second);
            if (!i || !j) throw InternalInvariantViolation("shortcut endpoint not a node");
            adj_[*i].push_back({*j, w});
            adj_[*j].push_back({*i, w});
        }
    }

    const Environment& environment() const { return env_; }
    const std::vector<Pt>& nodes() const { return nodes_; }

    /// Exact geodesic distance between arbitrary points of the environment.
    Rat distance(const Pt& s, const Pt& t) const {
        if (!env_.contains(s) || !env_.contains(t)) throw OutOfDomain("query point outside");
        if (s == t) return Rat(0);
        if (env_.visible(s, t)) return l1_dist(s, t);
        const PointCache& cs = cache_for(s);
        const PointCache& ct = cache_for(t);
        std::optional<Rat> best;
        for (size_t b = 0; b < nodes_.size(); ++b) {
            if (!ct.vis[b] || !cs.dist[b]) continue;
            Rat cand = *cs.dist[b] + l1_dist(nodes_[b], t);
            if (!best || cand < *best) best = cand;
        }
        if (!best) throw Unreachable("no geodesic found (disconnected free space?)");
        return *best;
    }

    /// Distance plus a witness polygonal path through graph nodes.
    std::pair<Rat, PolyPath> distance_with_path(const Pt& s, const Pt& t) const {
        if (!env_.contains(s) || !env_.contains(t)) throw OutOfDomain("query point outside");
        if (s == t) return {Rat(0), {s}};
        if (env_.visible(s, t)) return {l1_dist(s, t), {s, t}};
        const PointCache& cs = cache_for(s);
        const PointCache& ct = cache_for(t);
        std::optional<Rat> best;
        size_t best_b = 0;
        for (size_t b = 0; b < nodes_.size(); ++b) {
            if (!ct.vis[b] || !cs.dist[b]) continue;
            Rat cand = *cs.dist[b] + l1_dist(nodes_[b], t);
            if (!best || cand < *best) {
                best = cand;
                best_b = b;
            }
        }
        if (!best) throw Unreachable("no geodesic found (disconnected free space?)");
        PolyPath rev;
        for (int b = (int)best_b; b >= 0; b = cs.parent[b]) rev.push_back(nodes_[b]);
        PolyPath path{s};
        for (auto it = rev.rbegin(); it != rev.rend(); ++it)
            if (!(path.back() == *it)) path.push_back(*it);
        if (!(path.back() == t)) path.push_back(t);
        return {*best, path};
    }

    /// Exact distance from p to every graph node (infinity -> nullopt).
    const std::vector<std::optional<Rat>>& distances_to_nodes(const Pt& p) const {
        return cache_for(p).dist;
    }

    DistTable all_pairs(const std::vector<Pt>& pts) const {
        DistTable t;
        t.points = pts;
        t.d.assign(pts.size(), std::vector<Rat>(pts.size(), Rat(0)));
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j) {
                Rat dij = distance(pts[i], pts[j]);
                t.d[i][j] = dij;
                t.d[j][i] = dij;
            }
        return t;
    }

    std::optional<size_t> node_index(const Pt& p) const {
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), p);
        if (it != nodes_.end() && *it == p) return it - nodes_.begin();
        return std::nullopt;
    }

  private:
    struct PointCache {
        std::vector<char> vis;                 // visibility to each node
        std::vector<std::optional<Rat>> dist;  // geodesic distance to each node
        std::vector<int> parent;               // Dijkstra tree (-1 = direct from p)
    };

    const PointCache& cache_for(const Pt& p) const {
        auto it = cache_.find(p);
        if (it != cache_.end()) return it->second;
        PointCache pc;
        size_t n = nodes_.size();
        pc.vis.assign(n, 0);
        for (size_t i = 0; i < n; ++i) pc.vis[i] = env_.visible(p, nodes_[i]) ? 1 : 0;
        pc.dist.assign(n, std::nullopt);
        pc.parent.assign(n, -1);
        using QItem = std::pair<Rat, size_t>;
        auto cmp = [](const QItem& a, const QItem& b) { return a.first > b.first; };
        std::priority_queue<QItem, std::vector<QItem>, decltype(cmp)> pq(cmp);
        for (size_t i = 0; i < n; ++i)
            if (pc.vis[i]) {
                pc.dist[i] = l1_dist(p, nodes_[i]);
                pq.push({*pc.dist[i], i});
            }
        std::vector<char> done(n, 0);
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (done[u] || du > *pc.dist[u]) continue;
            done[u] = 1;
            for (auto& [v, w] : adj_[u]) {
                Rat nd = du + w;
                if (!pc.dist[v] || nd < *pc.dist[v]) {
                    pc.dist[v] = nd;
                    pc.parent[v] = (int)u;
                    pq.push({nd, v});
                }
            }
        }
        return cache_.emplace(p, std::move(pc)).first->second;
    }

    Environment env_;
    std::vector<Pt> nodes_;  // sorted
    std::vector<std::vector<std::pair<size_t, Rat>>> adj_;
    mutable std::map<Pt, PointCache> cache_;
};

}  // namespace l1geo
