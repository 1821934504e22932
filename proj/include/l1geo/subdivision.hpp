#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "l1geo/domain.hpp"
#include "l1geo/geom.hpp"

namespace l1geo {

/// Planar subdivision induced by a set of segments (typically a domain
/// boundary plus axis-parallel diagonals). Segments are split at mutual
/// intersections; faces are traced with a half-edge walk.
class Subdivision {
  public:
    struct Edge {
        int u, v;
        int tag;  // caller-defined provenance (min tag wins on overlap)
    };
    struct Face {
        std::vector<int> nodes;  // CCW cycle for bounded faces
        Ring poly;
        Pt inside;     // strictly interior sample point (bounded faces)
        bool bounded;  // false for outer contours (negative area walks)
        Rat area2;
    };

    void add_segment(const Pt& a, const Pt& b, int tag) {
        if (a == b) return;
        segs_.push_back({a, b, tag});
    }

    void build() {
        nodes_.clear();
        node_index_.clear();
        edges_.clear();
        faces_.clear();
        size_t m = segs_.size();
        std::vector<std::vector<int>> on_seg(m);
        for (size_t i = 0; i < m; ++i) {
            on_seg[i].push_back(node_id(segs_[i].a));
            on_seg[i].push_back(node_id(segs_[i].b));
        }
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j)
                for (auto& p :
                     segment_intersection_points(segs_[i].a, segs_[i].b, segs_[j].a, segs_[j].b)) {
                    int id = node_id(p);
                    on_seg[i].push_back(id);
                    on_seg[j].push_back(id);
                }
        std::map<std::pair<int, int>, int> edge_tag;
        for (size_t i = 0; i < m; ++i) {
            auto& lst = on_seg[i];
            const Pt& a = segs_[i].a;
            Pt dir(segs_[i].b.x - a.x, segs_[i].b.y - a.y);
            std::sort(lst.begin(), lst.end(), [&](int p, int q) {
                const Pt &pp = nodes_[p], &qq = nodes_[q];
                return dir.x * (pp.x - a.x) + dir.y * (pp.y - a.y) <
                       dir.x * (qq.x - a.x) + dir.y * (qq.y - a.y);
            });
            lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
            for (size_t k = 0; k + 1 < lst.size(); ++k) {
                int u = lst[k], v = lst[k + 1];
                auto key = std::minmax(u, v);
                auto it = edge_tag.find({key.first, key.second});
                if (it == edge_tag.end())
                    edge_tag[{key.first, key.second}] = segs_[i].tag;
                else
                    it->second = std::min(it->second, segs_[i].tag);
            }
        }
        for (auto& [key, tag] : edge_tag) edges_.push_back({key.first, key.second, tag});
        edge_lookup_.clear();
        for (size_t e = 0; e < edges_.size(); ++e)
            edge_lookup_[{edges_[e].u, edges_[e].v}] = (int)e;
        trace_faces();
    }

    const std::vector<Pt>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }

    /// Strictly interior point of a simple CCW polygon: a convex-corner
    /// centroid shrunk toward its corner until the exact inclusion test holds.
    static Pt interior_point(const Ring& poly) { return interior_sample(poly); }

    /// Tag of the (unique) edge between two node indices, or -1.
    int edge_tag(int u, int v) const {
        auto key = std::minmax(u, v);
        auto it = edge_lookup_.find({key.first, key.second});
        return it == edge_lookup_.end() ? -1 : edges_[it->second].tag;
    }

    /// Index of the first bounded face whose closure contains p, or -1.
    int locate(const Pt& p) const {
        for (size_t f = 0; f < faces_.size(); ++f) {
            if (!faces_[f].bounded) continue;
            if (!face_bbox_[f].contains(p)) continue;
            if (point_in_ring(p, faces_[f].poly) != Side::Out) return (int)f;
        }
        return -1;
    }

  private:
    struct RawSeg {
        Pt a, b;
        int tag;
    };

    int node_id(const Pt& p) {
        auto it = node_index_.find(p);
        if (it != node_index_.end()) return it->second;
        int id = (int)nodes_.size();
        nodes_.push_back(p);
        node_index_[p] = id;
        return id;
    }

    // CCW order of directions, starting from positive x-axis
    static bool dir_less(const Pt& d1, const Pt& d2) {
        auto half = [](const Pt& d) { return (d.y < 0 || (d.y == 0 && d.x < 0)) ? 1 : 0; };
        int h1 = half(d1), h2 = half(d2);
        if (h1 != h2) return h1 < h2;
        return d1.x * d2.y - d1.y * d2.x > 0;
    }

    void trace_faces() {
        int n = (int)nodes_.size();
        std::vector<std::vector<std::pair<int, int>>> out(n);  // (target node, dir-edge id)
        // directed edges: 2*e for u->v, 2*e+1 for v->u
        for (size_t e = 0; e < edges_.size(); ++e) {
            out[edges_[e].u].push_back({edges_[e].v, (int)(2 * e)});
            out[edges_[e].v].push_back({edges_[e].u, (int)(2 * e + 1)});
        }
        for (int v = 0; v < n; ++v) {
            std::sort(out[v].begin(), out[v].end(), [&](const auto& p, const auto& q) {
                Pt d1(nodes_[p.first].x - nodes_[v].x, nodes_[p.first].y - nodes_[v].y);
                Pt d2(nodes_[q.first].x - nodes_[v].x, nodes_[q.first].y - nodes_[v].y);
                if (d1 == d2) return p.second < q.second;
                return dir_less(d1, d2);
            });
        }
        auto source_of = [&](int de) {
            size_t e = de / 2;
            return de % 2 == 0 ? edges_[e].u : edges_[e].v;
        };
        auto target_of = [&](int de) {
            size_t e = de / 2;
            return de % 2 == 0 ? edges_[e].v : edges_[e].u;
        };
        std::vector<int> next(2 * edges_.size(), -1);
        for (int v = 0; v < n; ++v) {
            auto& lst = out[v];
            for (size_t k = 0; k < lst.size(); ++k) {
                // incoming dir-edge whose reversal is lst[k]: its next is lst[k-1] (CW step)
                int rev = lst[k].second ^ 1;
                next[rev] = lst[(k + lst.size() - 1) % lst.size()].second;
            }
        }
        std::vector<char> seen(2 * edges_.size(), 0);
        for (size_t de = 0; de < 2 * edges_.size(); ++de) {
            if (seen[de]) continue;
            Face f;
            int cur = (int)de;
            do {
                seen[cur] = 1;
                f.nodes.push_back(source_of(cur));
                cur = next[cur];
            } while (cur != (int)de && cur != -1);
            for (int idx : f.nodes) f.poly.push_back(nodes_[idx]);
            f.area2 = ring_signed_area2(f.poly);
            f.bounded = f.area2 > 0;
            if (f.bounded) f.inside = interior_sample(f.poly);
            faces_.push_back(std::move(f));
        }
        // deterministic order: bounded faces by lexicographically smallest vertex
        std::stable_sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
            if (a.bounded != b.bounded) return a.bounded;
            if (!a.bounded) return false;
            Pt ma = *std::min_element(a.poly.begin(), a.poly.end());
            Pt mb = *std::min_element(b.poly.begin(), b.poly.end());
            if (!(ma == mb)) return ma < mb;
            return a.area2 < b.area2;
        });
        face_bbox_.clear();
        for (auto& f : faces_) face_bbox_.push_back(bbox_of(f.poly));
    }

    static Pt interior_sample(const Ring& poly) {
        size_t n = poly.size();
        for (size_t i = 0; i < n; ++i) {
            const Pt& a = poly[(i + n - 1) % n];
            const Pt& b = poly[i];
            const Pt& c = poly[(i + 1) % n];
            if (orient(a, b, c) <= 0) continue;
            Pt probe((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3);
            for (int k = 0; k < 48; ++k) {
                if (point_in_ring(probe, poly) == Side::In) return probe;
                probe = Pt((probe.x + b.x) / 2, (probe.y + b.y) / 2);
            }
        }
        throw InternalInvariantViolation("no interior sample found in face polygon");
    }

    std::vector<RawSeg> segs_;
    std::vector<Pt> nodes_;
    std::map<Pt, int> node_index_;
    std::vector<Edge> edges_;
    std::map<std::pair<int, int>, int> edge_lookup_;
    std::vector<Face> faces_;
    std::vector<BBox> face_bbox_;
};

}  // namespace l1geo
