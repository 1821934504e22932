#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "l1geo/corridor.hpp"
#include "l1geo/domain.hpp"
#include "l1geo/subdivision.hpp"

namespace l1geo {

struct CrossFlavorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfUniverse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DiagonalGeneration { FromVertex, FromHEndpoint, FromCoreVertex, FromGate, FromAugmentation };

struct Diagonal {
    bool vertical;
    Seg segment;
    Pt origin;
    DiagonalGeneration generation;
};

struct DecompCell {
    int id = -1;
    Ring poly;                 // CCW closure
    std::vector<Pt> corners;   // V_sigma: diagonal endpoints/crossings on the cell
    std::vector<Ring> fragments;  // convex cover of the cell (LP domains)
    bool oceanic = false;
    int h_trap = -1, v_trap = -1;
    int parent = -1;  // containing cell id in the reference decomposition
    BBox box;

    Pt sample() const { return inside_; }
    Pt inside_;
};

enum class DecompFlavor { D, DM, DMA, DAug };

/// Overlay decomposition of a polygonal universe by horizontal and vertical
/// diagonals shot from source points (plus optional pre-made verticals).
/// Horizontal diagonals come from each h-source; vertical ones from every
/// h-source, extra v-source, and every horizontal-diagonal endpoint.
class Decomposition {
  public:
    DecompFlavor flavor = DecompFlavor::D;

    const std::vector<DecompCell>& cells() const { return cells_; }
    const std::vector<Diagonal>& diagonals() const { return diagonals_; }
    const PolygonalDomain& universe() const { return universe_; }

    /// Smallest-id cell whose closure contains p.
    int locate(const Pt& p) const {
        for (auto& c : cells_) {
            if (!c.box.contains(p)) continue;
            if (point_in_ring(p, c.poly) != Side::Out) return c.id;
        }
        throw OutOfUniverse("point not in any cell of the decomposition");
    }

    /// Shared-trapezoid alignedness (same decomposition only).
    bool aligned(int c1, int c2) const {
        const DecompCell& a = cells_[c1];
        const DecompCell& b = cells_[c2];
        return a.h_trap == b.h_trap || a.v_trap == b.v_trap;
    }

    size_t cell_count() const { return cells_.size(); }

    /// Marks cells entirely inside the ocean (no pocket-interior overlap).
    void classify_oceanic(const std::vector<Pocket>& pockets) {
        for (auto& c : cells_) {
            c.oceanic = true;
            for (auto& pk : pockets) {
                if (polygon_interiors_intersect(c.poly, pk.ring)) {
                    c.oceanic = false;
                    break;
                }
            }
        }
    }

    /// Records the reference-decomposition cell containing each cell. Cells
    /// outside the reference universe (coastal cells vs D_M) keep parent -1;
    /// call classify_oceanic first when the reference is an ocean
    /// decomposition.
    void compute_parents(const Decomposition& reference, bool oceanic_only = false) {
        for (auto& c : cells_) {
            if (oceanic_only && !c.oceanic) {
                c.parent = -1;
                continue;
            }
            c.parent = reference.locate(c.inside_);
        }
    }

    std::vector<DecompCell>& mutable_cells() { return cells_; }

    friend Decomposition build_decomposition(const PolygonalDomain&, const std::vector<Pt>&,
                                             const std::vector<Pt>&, const std::vector<Diagonal>&,
                                             DecompFlavor);

    /// True if the interiors of two simple polygons intersect.
    static bool polygon_interiors_intersect(const Ring& a, const Ring& b) {
        BBox ba = bbox_of(a), bb = bbox_of(b);
        if (ba.xmax < bb.xmin || bb.xmax < ba.xmin || ba.ymax < bb.ymin || bb.ymax < ba.ymin)
            return false;
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                if (segments_properly_cross(a[i], a[(i + 1) % a.size()], b[j],
                                            b[(j + 1) % b.size()]))
                    return true;
        for (auto& p : a)
            if (point_in_ring(p, b) == Side::In) return true;
        for (auto& p : b)
            if (point_in_ring(p, a) == Side::In) return true;
        // boundary-only contact vs containment: test interior samples
        Ring ccw_a = a;
        if (ring_signed_area2(ccw_a) < 0) std::reverse(ccw_a.begin(), ccw_a.end());
        Ring ccw_b = b;
        if (ring_signed_area2(ccw_b) < 0) std::reverse(ccw_b.begin(), ccw_b.end());
        Pt sa = Subdivision::interior_point(ccw_a);
        Pt sb = Subdivision::interior_point(ccw_b);
        if (point_in_ring(sa, b) == Side::In || point_in_ring(sb, a) == Side::In) return true;
        return false;
    }

  private:
    PolygonalDomain universe_;
    std::vector<Diagonal> diagonals_;
    std::vector<DecompCell> cells_;
};

namespace detail {

/// Maximal interval of `intervals` containing x, if any.
inline std::optional<std::pair<Rat, Rat>> interval_containing(
    const std::vector<std::pair<Rat, Rat>>& intervals, const Rat& x) {
    for (auto& iv : intervals)
        if (iv.first <= x && x <= iv.second) return iv;
    return std::nullopt;
}

}  // namespace detail

/// Core construction shared by D, D_M, D_M^A and the augmented D.
inline Decomposition build_decomposition(const PolygonalDomain& universe,
                                         const std::vector<Pt>& h_sources,
                                         const std::vector<Pt>& extra_v_sources,
                                         const std::vector<Diagonal>& extra_v_diagonals,
                                         DecompFlavor flavor) {
    Decomposition D;
    D.flavor = flavor;
    D.universe_ = universe;

    std::set<std::tuple<Rat, Rat, Rat>> h_set, v_set;  // (line, lo, hi)
    auto on_boundary_edge = [&](const Seg& s) {
        for (auto& e : universe.edges())
            if (on_segment(s.a, e.a, e.b) && on_segment(s.b, e.a, e.b)) return true;
        return false;
    };
    auto add_h = [&](const Pt& src, DiagonalGeneration gen) {
        auto iv = detail::interval_containing(universe.inside_intervals_h(src.y), src.x);
        if (!iv || iv->first == iv->second) return;
        Seg seg(Pt(iv->first, src.y), Pt(iv->second, src.y));
        if (on_boundary_edge(seg)) return;  // collinear with a wall: adds nothing
        if (h_set.insert({src.y, iv->first, iv->second}).second)
            D.diagonals_.push_back({false, seg, src, gen});
    };
    auto add_v = [&](const Pt& src, DiagonalGeneration gen) {
        auto iv = detail::interval_containing(universe.inside_intervals_v(src.x), src.y);
        if (!iv || iv->first == iv->second) return;
        Seg seg(Pt(src.x, iv->first), Pt(src.x, iv->second));
        if (on_boundary_edge(seg)) return;
        if (v_set.insert({src.x, iv->first, iv->second}).second)
            D.diagonals_.push_back({true, seg, src, gen});
    };
    DiagonalGeneration base_gen = (flavor == DecompFlavor::DM || flavor == DecompFlavor::DMA)
                                      ? DiagonalGeneration::FromCoreVertex
                                      : DiagonalGeneration::FromVertex;
    for (auto& s : h_sources) add_h(s, base_gen);
    for (auto& s : h_sources) add_v(s, base_gen);
    for (auto& s : extra_v_sources) add_v(s, DiagonalGeneration::FromGate);
    // vertical diagonals from horizontal-diagonal endpoints
    std::vector<Pt> h_endpoints;
    for (auto& d : D.diagonals_)
        if (!d.vertical) {
            h_endpoints.push_back(d.segment.a);
            h_endpoints.push_back(d.segment.b);
        }
    for (auto& e : h_endpoints) add_v(e, DiagonalGeneration::FromHEndpoint);
    for (auto& d : extra_v_diagonals)
        if (v_set.insert({d.segment.a.x, d.segment.a.y, d.segment.b.y}).second)
            D.diagonals_.push_back(d);

    // subdivision: universe boundary + diagonals
    Subdivision sub;
    for (auto& e : universe.edges()) sub.add_segment(e.a, e.b, 0);
    for (auto& d : D.diagonals_) sub.add_segment(d.segment.a, d.segment.b, d.vertical ? 2 : 1);
    sub.build();

    // decomposition vertices: diagonal endpoints, diagonal crossings, and
    // universe ring vertices
    std::set<Pt> marked;
    for (auto& d : D.diagonals_) {
        marked.insert(d.segment.a);
        marked.insert(d.segment.b);
    }
    for (auto& v : universe.vertices()) marked.insert(v);
    for (size_t i = 0; i < D.diagonals_.size(); ++i)
        for (size_t j = i + 1; j < D.diagonals_.size(); ++j) {
            if (D.diagonals_[i].vertical == D.diagonals_[j].vertical) continue;
            for (auto& p : segment_intersection_points(
                     D.diagonals_[i].segment.a, D.diagonals_[i].segment.b,
                     D.diagonals_[j].segment.a, D.diagonals_[j].segment.b))
                marked.insert(p);
        }

    for (auto& face : sub.faces()) {
        if (!face.bounded) continue;
        if (universe.locate_point(face.inside) != Side::In) continue;  // hole face
        DecompCell c;
        c.id = (int)D.cells_.size();
        c.poly = face.poly;
        c.inside_ = face.inside;
        c.box = bbox_of(face.poly);
        for (auto& p : face.poly)
            if (marked.count(p)) c.corners.push_back(p);
        if (convex_nondegenerate(c.poly)) {
            bool convex = true;
            size_t n = c.poly.size();
            for (size_t i = 0; i < n && convex; ++i)
                if (orient(c.poly[(i + n - 1) % n], c.poly[i], c.poly[(i + 1) % n]) < 0)
                    convex = false;
            if (convex)
                c.fragments.push_back(c.poly);
            else
                c.fragments = detail::convex_partition(c.poly);
        } else {
            c.fragments = detail::convex_partition(c.poly);
        }
        D.cells_.push_back(std::move(c));
    }

    // trapezoid membership for alignedness: one sub-subdivision per axis
    for (int pass = 0; pass < 2; ++pass) {
        bool vertical = pass == 1;
        Subdivision tsub;
        for (auto& e : universe.edges()) tsub.add_segment(e.a, e.b, 0);
        for (auto& d : D.diagonals_)
            if (d.vertical == vertical) tsub.add_segment(d.segment.a, d.segment.b, 1);
        tsub.build();
        for (auto& c : D.cells_) {
            int f = tsub.locate(c.inside_);
            if (vertical)
                c.v_trap = f;
            else
                c.h_trap = f;
        }
    }
    return D;
}

inline Decomposition build_D(const PolygonalDomain& P) {
    return build_decomposition(P, P.vertices(), {}, {}, DecompFlavor::D);
}

inline Decomposition build_DM(const CorridorStructure& S) {
    PolygonalDomain M = S.ocean.as_domain();
    return build_decomposition(M, dm_diagonal_sources(S), {}, {}, DecompFlavor::DM);
}

/// D_M refined by diagonals from the gate endpoints of one bay or canal.
inline Decomposition build_DM_A(const CorridorStructure& S, const Pocket& A) {
    PolygonalDomain M = S.ocean.as_domain();
    std::vector<Pt> sources = dm_diagonal_sources(S);
    for (auto& g : A.gates) {
        sources.push_back(g.a);
        sources.push_back(g.b);
    }
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    return build_decomposition(M, sources, {}, {}, DecompFlavor::DMA);
}

/// Adds the vertical diagonals of D_M that no diagonal of D contains,
/// extended through the whole domain.
inline Decomposition augment_D(const PolygonalDomain& P, const Decomposition& D,
                               const Decomposition& DM) {
    std::vector<Diagonal> extras;
    for (auto& dm_d : DM.diagonals()) {
        if (!dm_d.vertical) continue;  // horizontal D_M diagonals lie inside D's
        bool contained = false;
        for (auto& d : D.diagonals()) {
            if (!d.vertical || d.segment.a.x != dm_d.segment.a.x) continue;
            if (d.segment.a.y <= dm_d.segment.a.y && dm_d.segment.b.y <= d.segment.b.y)
                contained = true;
        }
        if (contained) continue;
        auto iv = detail::interval_containing(P.inside_intervals_v(dm_d.segment.a.x),
                                              dm_d.segment.a.y);
        if (!iv) throw InternalInvariantViolation("augmented diagonal outside the domain");
        extras.push_back({true, Seg(Pt(dm_d.segment.a.x, iv->first), Pt(dm_d.segment.a.x, iv->second)),
                          dm_d.origin, DiagonalGeneration::FromAugmentation});
    }
    return build_decomposition(P, P.vertices(), {}, extras, DecompFlavor::DAug);
}

/// Cross-shaped gate region membership: the cell sample (and hence the whole
/// cell, by the containment-or-disjoint dichotomy) joins the gate by a
/// vertical or horizontal segment inside the domain.
inline bool point_in_gate_region(const PolygonalDomain& P, const Seg& g, const Pt& p) {
    auto reaches = [&](bool vertical) {
        Rat ga = vertical ? g.a.x : g.a.y;
        Rat gb = vertical ? g.b.x : g.b.y;
        Rat pc = vertical ? p.x : p.y;
        if (ga == gb) {
            if (pc != ga) return false;
            // degenerate strip: aim at the nearest gate endpoint
            const Pt& near_end =
                l1_dist(p, g.a) <= l1_dist(p, g.b) ? g.a : g.b;
            return P.contains_segment(p, near_end);
        }
        if ((pc < ga && pc < gb) || (pc > ga && pc > gb)) return false;
        Rat t = (pc - ga) / (gb - ga);
        Pt q = vertical ? Pt(p.x, g.a.y + t * (g.b.y - g.a.y))
                        : Pt(g.a.x + t * (g.b.x - g.a.x), p.y);
        return P.contains_segment(p, q);
    };
    return reaches(true) || reaches(false);
}

inline bool g_aligned(const PolygonalDomain& P, const Seg& gate, const DecompCell& cell) {
    return point_in_gate_region(P, gate, cell.sample());
}

/// The combined family D_f: every D_M cell plus every coastal cell of the
/// augmented D whose boundary meets the domain boundary.
struct DfCell {
    bool from_dm;
    int cell;  // id within its decomposition
};

inline std::vector<DfCell> build_Df(const PolygonalDomain& P, const Decomposition& Daug,
                                    const Decomposition& DM) {
    std::vector<DfCell> out;
    for (auto& c : DM.cells()) out.push_back({true, c.id});
    for (auto& c : Daug.cells()) {
        if (c.oceanic) continue;
        bool touches = false;
        for (size_t i = 0; i < c.poly.size() && !touches; ++i) {
            Pt mid((c.poly[i].x + c.poly[(i + 1) % c.poly.size()].x) / 2,
                   (c.poly[i].y + c.poly[(i + 1) % c.poly.size()].y) / 2);
            for (auto& e : P.edges())
                if (on_segment(mid, e.a, e.b)) {
                    touches = true;
                    break;
                }
        }
        if (touches) out.push_back({false, c.id});
    }
    return out;
}

}  // namespace l1geo
