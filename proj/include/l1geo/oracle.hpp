#pragma once

#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "l1geo/domain.hpp"
#include "l1geo/geom.hpp"

namespace l1geo {

/// Independent exact L1 oracle: the track graph. Axis-parallel tracks run
/// through every obstacle vertex and every registered point; nodes are all
/// track/track and track/boundary intersections; edges follow tracks and the
/// domain boundary. Some L1 shortest path between registered nodes lies in
/// this graph, so Dijkstra distances are exact. Deliberately quadratic-sized;
/// used only to cross-check the visibility-graph engine.
class TrackGraph {
  public:
    TrackGraph(const PolygonalDomain& P, const std::vector<Pt>& registered) : domain_(P) {
        std::vector<Pt> sources = P.vertices();
        for (auto& p : registered) {
            if (!P.contains(p)) throw OutOfDomain("registered point outside the domain");
            sources.push_back(p);
        }
        std::sort(sources.begin(), sources.end());
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

        std::set<std::tuple<bool, Rat, Rat, Rat>> seen;  // (vertical, line, lo, hi)
        std::vector<Seg> segs;
        for (auto& s : sources) {
            for (int pass = 0; pass < 2; ++pass) {
                bool vertical = pass == 1;
                auto ivs = vertical ? P.inside_intervals_v(s.x) : P.inside_intervals_h(s.y);
                for (auto& iv : ivs) {
                    Rat c = vertical ? s.y : s.x;
                    if (!(iv.first <= c && c <= iv.second)) continue;
                    if (iv.first == iv.second) break;
                    if (seen.insert({vertical, vertical ? s.x : s.y, iv.first, iv.second}).second)
                        segs.push_back(vertical ? Seg(Pt(s.x, iv.first), Pt(s.x, iv.second))
                                                : Seg(Pt(iv.first, s.y), Pt(iv.second, s.y)));
                    break;
                }
            }
        }
        size_t track_count = segs.size();
        for (auto& e : P.edges()) segs.push_back(Seg(e.a, e.b));

        // nodes on each segment: endpoints plus pairwise intersections
        std::vector<std::vector<Pt>> on_seg(segs.size());
        for (size_t i = 0; i < segs.size(); ++i) {
            on_seg[i].push_back(segs[i].a);
            on_seg[i].push_back(segs[i].b);
        }
        for (size_t i = 0; i < segs.size(); ++i)
            for (size_t j = i + 1; j < segs.size(); ++j) {
                bool track_pair = i < track_count && j < track_count;
                // track/track crossings only matter between different axes;
                // parallel overlapping tracks share endpoints anyway
                if (track_pair && segs[i].a.x == segs[i].b.x && segs[j].a.x == segs[j].b.x)
                    continue;
                if (track_pair && segs[i].a.y == segs[i].b.y && segs[j].a.y == segs[j].b.y)
                    continue;
                for (auto& p :
                     segment_intersection_points(segs[i].a, segs[i].b, segs[j].a, segs[j].b)) {
                    on_seg[i].push_back(p);
                    on_seg[j].push_back(p);
                }
            }
        for (size_t i = 0; i < segs.size(); ++i) {
            auto& lst = on_seg[i];
            Pt a = segs[i].a;
            Pt dir(segs[i].b.x - a.x, segs[i].b.y - a.y);
            std::sort(lst.begin(), lst.end(), [&](const Pt& p, const Pt& q) {
                return dir.x * (p.x - a.x) + dir.y * (p.y - a.y) <
                       dir.x * (q.x - a.x) + dir.y * (q.y - a.y);
            });
            lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
            for (size_t k = 0; k + 1 < lst.size(); ++k) add_edge(lst[k], lst[k + 1]);
        }
        for (auto& s : sources) node_id(s);  // isolated sources still queryable
    }

    size_t node_count() const { return nodes_.size(); }

    /// Exact geodesic distance between two registered (or node) points.
    Rat distance(const Pt& s, const Pt& t) const {
        auto is = index_.find(s), it = index_.find(t);
        if (is == index_.end() || it == index_.end())
            throw OutOfDomain("oracle query point was not registered");
        if (s == t) return Rat(0);
        const auto& dist = dijkstra(is->second);
        if (!dist[it->second]) throw Unreachable("track graph disconnected");
        return *dist[it->second];
    }

  private:
    int node_id(const Pt& p) {
        auto it = index_.find(p);
        if (it != index_.end()) return it->second;
        int id = (int)nodes_.size();
        nodes_.push_back(p);
        index_[p] = id;
        adj_.push_back({});
        return id;
    }
    void add_edge(const Pt& a, const Pt& b) {
        int u = node_id(a), v = node_id(b);
        Rat w = l1_dist(a, b);
        adj_[u].push_back({v, w});
        adj_[v].push_back({u, w});
    }

    const std::vector<std::optional<Rat>>& dijkstra(int src) const {
        auto it = cache_.find(src);
        if (it != cache_.end()) return it->second;
        std::vector<std::optional<Rat>> dist(nodes_.size());
        using QItem = std::pair<Rat, int>;
        auto cmp = [](const QItem& a, const QItem& b) { return a.first > b.first; };
        std::priority_queue<QItem, std::vector<QItem>, decltype(cmp)> pq(cmp);
        dist[src] = Rat(0);
        pq.push({Rat(0), src});
        std::vector<char> done(nodes_.size(), 0);
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (done[u]) continue;
            done[u] = 1;
            for (auto& [v, w] : adj_[u]) {
                Rat nd = du + w;
                if (!dist[v] || nd < *dist[v]) {
                    dist[v] = nd;
                    pq.push({nd, v});
                }
            }
        }
        return cache_.emplace(src, std::move(dist)).first->second;
    }

    PolygonalDomain domain_;
    std::vector<Pt> nodes_;
    std::map<Pt, int> index_;
    std::vector<std::vector<std::pair<int, Rat>>> adj_;
    mutable std::map<int, std::vector<std::optional<Rat>>> cache_;
};

/// One-shot oracle distance (builds a throwaway track graph).
inline Rat oracle_dist(const PolygonalDomain& P, const Pt& s, const Pt& t) {
    if (!P.contains(s) || !P.contains(t)) throw OutOfDomain("oracle point outside the domain");
    TrackGraph g(P, {s, t});
    return g.distance(s, t);
}

/// Deterministic rejection sampling in the bounding box with exact
/// point-in-domain tests.
inline std::vector<Pt> sample_points(const PolygonalDomain& P, size_t k, unsigned long seed) {
    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
    const BBox& bb = P.bounds();
    const long denom = 1 << 20;
    std::uniform_int_distribution<long> u(0, denom);
    Rat w = bb.xmax - bb.xmin, h = bb.ymax - bb.ymin;
    std::vector<Pt> out;
    size_t guard = 0;
    while (out.size() < k) {
        if (++guard > 10000 * (k + 1)) throw InternalInvariantViolation("sampling starved");
        Pt p(bb.xmin + w * rat(u(rng), denom), bb.ymin + h * rat(u(rng), denom));
        if (P.contains(p)) out.push_back(p);
    }
    return out;
}

}  // namespace l1geo
