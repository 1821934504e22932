#pragma once

#include <optional>
#include <vector>

#include "l1geo/analysis.hpp"
#include "l1geo/lp.hpp"

namespace l1geo {

enum class CellFamily { D, DAug, DM };

struct CellRef {
    CellFamily family;
    int id;
    bool operator==(const CellRef& o) const { return family == o.family && id == o.id; }
};

/// One linear candidate of the restricted distance: s,t -> |s-a| + c + |t-b|.
struct LinTerm {
    Pt a, b;
    Rat c;
    Rat eval(const Pt& s, const Pt& t) const { return l1_dist(s, a) + c + l1_dist(t, b); }
};

/// Terms valid while t stays inside one region (a DMA child cell, usually the
/// whole t-cell). `direct` marks regions where d(s,t) = |st| exactly.
struct TermGroup {
    Ring region;
    std::vector<Ring> fragments;
    std::vector<Pt> corners;
    bool direct = false;
    std::vector<LinTerm> terms;
};

namespace detail {

inline std::vector<Ring> refine_by_lines(const Ring& poly, std::vector<Rat> xs,
                                         std::vector<Rat> ys) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    std::vector<Ring> pieces{poly};
    auto split_all = [&pieces](const Rat& a, const Rat& b, const Rat& c) {
        std::vector<Ring> next;
        for (auto& p : pieces) {
            Ring lo = clip_convex(p, a, b, c);
            Ring hi = clip_convex(p, -a, -b, -c);
            if (convex_nondegenerate(lo)) next.push_back(std::move(lo));
            if (convex_nondegenerate(hi)) next.push_back(std::move(hi));
        }
        pieces = std::move(next);
    };
    for (auto& x : xs) split_all(Rat(1), Rat(0), x);
    for (auto& y : ys) split_all(Rat(0), Rat(1), y);
    return pieces;
}

/// Halfplane rows of a convex CCW polygon over LP variables (vx, vy).
inline void add_convex_rows(LinearProgram& lp, const Ring& poly, int vx, int vy) {
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Pt& p = poly[i];
        const Pt& q = poly[(i + 1) % n];
        // interior: cross(q-p, X-p) >= 0
        std::vector<Rat> row(lp.num_vars(), Rat(0));
        row[vx] = q.y - p.y;
        row[vy] = -(q.x - p.x);
        lp.add_le(std::move(row), (q.y - p.y) * p.x - (q.x - p.x) * p.y);
    }
}

inline int sign_or_one(const Rat& v) {
    int s = rat_sign(v);
    return s == 0 ? 1 : s;
}

}  // namespace detail

/// The geodesic distance restricted to a cell pair, as the lower envelope of
/// O(1) linear candidates (with per-region term lists when the ocean cell
/// needed gate refinement). `swapped` marks a transposed build.
class CellPairDistFn {
  public:
    CellRef s_ref, t_ref;
    const DecompCell* s_cell = nullptr;
    const DecompCell* t_cell = nullptr;
    std::vector<TermGroup> groups;
    bool swapped = false;

    Rat eval(const Pt& s_in, const Pt& t_in) const {
        const Pt& s = swapped ? t_in : s_in;
        const Pt& t = swapped ? s_in : t_in;
        const TermGroup* g = group_for(t);
        if (!g) throw OutOfUniverse("t outside the cell pair function domain");
        std::optional<Rat> best;
        if (g->direct) best = l1_dist(s, t);
        for (auto& term : g->terms) {
            Rat v = term.eval(s, t);
            if (!best || v < *best) best = v;
        }
        if (!best) throw InternalInvariantViolation("cell pair function with no candidates");
        return *best;
    }

    struct MaxResult {
        Rat value;
        Pt s, t;
        bool valid = false;
    };

    /// Exact maximum of the restricted distance over the cell pair, ignoring
    /// candidates that do not exceed `threshold` (and skipping pieces whose
    /// cheap upper bound cannot).
    MaxResult maximize(std::optional<Rat> threshold) const {
        MaxResult best;
        auto bar = [&]() -> std::optional<Rat> {
            if (best.valid && threshold) return std::max(best.value, *threshold);
            if (best.valid) return best.value;
            return threshold;
        };
        auto offer = [&](const Rat& v, const Pt& s, const Pt& t) {
            auto b = bar();
            if (b && !(v > *b)) return;
            best.value = v;
            best.s = s;
            best.t = t;
            best.valid = true;
        };
        for (auto& g : groups) {
            if (g.direct) {
                // the direct clause is exact on the region; any extra terms
                // are redundant upper bounds. Convexity: corner pairs suffice.
                for (auto& sf : s_cell->fragments)
                    for (auto& sv : sf)
                        for (auto& tf : g.fragments)
                            for (auto& tv : tf) offer(l1_dist(sv, tv), sv, tv);
                continue;
            }
            std::vector<Rat> sx, sy, tx, ty;
            for (auto& term : g.terms) {
                sx.push_back(term.a.x);
                sy.push_back(term.a.y);
                tx.push_back(term.b.x);
                ty.push_back(term.b.y);
            }
            std::vector<Ring> s_pieces, t_pieces;
            for (auto& sf : s_cell->fragments)
                for (auto& p : detail::refine_by_lines(sf, sx, sy)) s_pieces.push_back(p);
            for (auto& tf : g.fragments)
                for (auto& p : detail::refine_by_lines(tf, tx, ty)) t_pieces.push_back(p);
            for (auto& sp : s_pieces) {
                for (auto& tp : t_pieces) {
                    // cheap upper bound from per-term corner maxima
                    std::optional<Rat> ub;
                    for (auto& term : g.terms) {
                        Rat ms(0), mt(0);
                        bool first = true;
                        for (auto& v : sp) {
                            Rat d = l1_dist(v, term.a);
                            if (first || d > ms) ms = d;
                            first = false;
                        }
                        first = true;
                        for (auto& v : tp) {
                            Rat d = l1_dist(v, term.b);
                            if (first || d > mt) mt = d;
                            first = false;
                        }
                        Rat cand = ms + term.c + mt;
                        if (!ub || cand < *ub) ub = cand;
                    }
                    {
                        auto b = bar();
                        if (ub && b && !(*ub > *b)) continue;
                    }
                    auto r = solve_piece(g, sp, tp);
                    offer(r.first, Pt(r.second[0], r.second[1]), Pt(r.second[2], r.second[3]));
                }
            }
        }
        if (swapped && best.valid) std::swap(best.s, best.t);
        return best;
    }

    /// Exact maximum over the t-side cell with the s-side point fixed.
    MaxResult maximize_over_t(const Pt& point, std::optional<Rat> threshold) const {
        if (swapped)
            throw InternalInvariantViolation("maximize_over_t on a transposed pair function");
        return maximize_fixed(point, threshold);
    }

    const TermGroup* group_for(const Pt& t) const {
        for (auto& g : groups)
            if (point_in_ring(t, g.region) != Side::Out) return &g;
        return nullptr;
    }

    /// Build-time sanity check: at every corner pair the envelope value must
    /// equal the true geodesic distance.
    void check_corners(const Analysis& A) const {
        for (auto& g : groups)
            for (auto& v : s_cell->corners)
                for (auto& w : g.corners) {
                    Rat predicted = eval(swapped ? w : v, swapped ? v : w);
                    if (predicted != A.dist(v, w))
                        throw InternalInvariantViolation(
                            "cell pair function disagrees with the engine at a corner pair");
                }
    }

  private:
    std::pair<Rat, std::vector<Rat>> solve_piece(const TermGroup& g, const Ring& sp,
                                                 const Ring& tp) const {
        // vars: xs, ys, xt, yt, z
        LinearProgram lp(5);
        Pt sm = convex_interior_point(sp);
        Pt tm = convex_interior_point(tp);
        for (auto& term : g.terms) {
            int sxs = detail::sign_or_one(sm.x - term.a.x);
            int sys = detail::sign_or_one(sm.y - term.a.y);
            int sxt = detail::sign_or_one(tm.x - term.b.x);
            int syt = detail::sign_or_one(tm.y - term.b.y);
            // z <= sxs (xs - ax) + sys (ys - ay) + c + sxt (xt - bx) + syt (yt - by)
            std::vector<Rat> row(5, Rat(0));
            row[0] = Rat(-sxs);
            row[1] = Rat(-sys);
            row[2] = Rat(-sxt);
            row[3] = Rat(-syt);
            row[4] = Rat(1);
            Rat rhs = term.c - Rat(sxs) * term.a.x - Rat(sys) * term.a.y -
                      Rat(sxt) * term.b.x - Rat(syt) * term.b.y;
            lp.add_le(std::move(row), rhs);
        }
        detail::add_convex_rows(lp, sp, 0, 1);
        detail::add_convex_rows(lp, tp, 2, 3);
        auto r = lp.maximize({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)});
        if (r.status != LinearProgram::Status::Optimal)
            throw InternalInvariantViolation("constrained maximization LP failed");
        return {r.value, r.point};
    }

    MaxResult maximize_fixed(const Pt& s, std::optional<Rat> threshold) const {
        MaxResult best;
        auto bar = [&]() -> std::optional<Rat> {
            if (best.valid && threshold) return std::max(best.value, *threshold);
            if (best.valid) return best.value;
            return threshold;
        };
        auto offer = [&](const Rat& v, const Pt& t) {
            auto b = bar();
            if (b && !(v > *b)) return;
            best.value = v;
            best.s = s;
            best.t = t;
            best.valid = true;
        };
        for (auto& g : groups) {
            if (g.direct) {
                for (auto& tf : g.fragments)
                    for (auto& tv : tf) offer(l1_dist(s, tv), tv);
                continue;
            }
            std::vector<Rat> tx, ty;
            for (auto& term : g.terms) {
                tx.push_back(term.b.x);
                ty.push_back(term.b.y);
            }
            for (auto& tf : g.fragments) {
                for (auto& tp : detail::refine_by_lines(tf, tx, ty)) {
                    std::optional<Rat> ub;
                    for (auto& term : g.terms) {
                        Rat head = l1_dist(s, term.a) + term.c;
                        Rat mt(0);
                        bool first = true;
                        for (auto& v : tp) {
                            Rat d = l1_dist(v, term.b);
                            if (first || d > mt) mt = d;
                            first = false;
                        }
                        Rat cand = head + mt;
                        if (!ub || cand < *ub) ub = cand;
                    }
                    {
                        auto b = bar();
                        if (ub && b && !(*ub > *b)) continue;
                    }
                    // vars: xt, yt, z
                    LinearProgram lp(3);
                    Pt tm = convex_interior_point(tp);
                    for (auto& term : g.terms) {
                        int sxt = detail::sign_or_one(tm.x - term.b.x);
                        int syt = detail::sign_or_one(tm.y - term.b.y);
                        std::vector<Rat> row(3, Rat(0));
                        row[0] = Rat(-sxt);
                        row[1] = Rat(-syt);
                        row[2] = Rat(1);
                        Rat rhs = l1_dist(s, term.a) + term.c - Rat(sxt) * term.b.x -
                                  Rat(syt) * term.b.y;
                        lp.add_le(std::move(row), rhs);
                    }
                    detail::add_convex_rows(lp, tp, 0, 1);
                    auto r = lp.maximize({Rat(0), Rat(0), Rat(1)});
                    if (r.status != LinearProgram::Status::Optimal)
                        throw InternalInvariantViolation("fixed-point maximization LP failed");
                    offer(r.value, Pt(r.point[0], r.point[1]));
                }
            }
        }
        if (swapped && best.valid) std::swap(best.s, best.t);
        return best;
    }
};

/// Assembles the restricted-distance envelope for a cell pair per the case
/// table: plain alignedness inside one decomposition, the extended oceanic
/// alignedness across decompositions, and the gate analysis (v_g and the
/// funnel anchors W) for coastal-vs-ocean pairs.
inline CellPairDistFn build_cellpair_fn(const Analysis& A, CellRef sref, CellRef tref,
                                        bool self_check = false) {
    auto resolve = [&A](const CellRef& r) -> const DecompCell* {
        switch (r.family) {
            case CellFamily::D: return &A.D.cells()[r.id];
            case CellFamily::DAug: return &A.Daug.cells()[r.id];
            case CellFamily::DM: return &A.DM.cells()[r.id];
        }
        return nullptr;
    };

    // transpose so the gate case always sees (coastal D-family, DM)
    if (sref.family == CellFamily::DM && tref.family != CellFamily::DM) {
        CellPairDistFn fn = build_cellpair_fn(A, tref, sref, self_check);
        fn.swapped = !fn.swapped;
        std::swap(fn.s_ref, fn.t_ref);
        return fn;
    }

    CellPairDistFn fn;
    fn.s_ref = sref;
    fn.t_ref = tref;
    fn.s_cell = resolve(sref);
    fn.t_cell = resolve(tref);
    const DecompCell& sc = *fn.s_cell;
    const DecompCell& tc = *fn.t_cell;

    auto family2 = [&A](const std::vector<Pt>& vs, const std::vector<Pt>& vt) {
        std::vector<LinTerm> terms;
        for (auto& v : vs)
            for (auto& w : vt) terms.push_back({v, w, A.dist(v, w)});
        return terms;
    };
    auto whole_cell_group = [&](bool direct, std::vector<LinTerm> terms) {
        TermGroup g;
        g.region = tc.poly;
        g.fragments = tc.fragments;
        g.corners = tc.corners;
        g.direct = direct;
        g.terms = std::move(terms);
        fn.groups.push_back(std::move(g));
    };

    bool same_family = sref.family == tref.family;
    if (same_family) {
        const Decomposition& dec = sref.family == CellFamily::D
                                       ? A.D
                                       : (sref.family == CellFamily::DAug ? A.Daug : A.DM);
        if (dec.aligned(sc.id, tc.id))
            whole_cell_group(true, {});
        else
            whole_cell_group(false, family2(sc.corners, tc.corners));
    } else {
        // D-family vs DM
        if (sref.family == CellFamily::D)
            throw MissingContext("cross-flavor pair requires the augmented decomposition");
        if (sc.oceanic) {
            // extended alignedness through the containing DM cell
            if (sc.parent < 0) throw CrossFlavorError("oceanic cell has no DM parent");
            if (A.DM.aligned(sc.parent, tc.id))
                whole_cell_group(true, {});
            else
                whole_cell_group(false, family2(sc.corners, tc.corners));
        } else {
            // coastal cell vs ocean cell: refine by the gates of every pocket
            // the coastal cell meets, then apply the case analysis per child
            const std::vector<int>& pockets = A.pockets_of(sc.id);
            if (pockets.empty())
                throw MissingContext("coastal cell without pocket intersections");
            const Decomposition& dma = A.dma_for(pockets);
            for (auto& child : dma.cells()) {
                if (child.parent != tc.id) continue;
                TermGroup g;
                g.region = child.poly;
                g.fragments = child.fragments;
                g.corners = child.corners;
                g.terms = family2(sc.corners, child.corners);
                for (int k : pockets) {
                    const Pocket& A_k = A.S.pockets[k];
                    for (size_t gi = 0; gi < A_k.gates.size(); ++gi) {
                        bool s_al = A.cell_g_aligned(sc.id, k, (int)gi);
                        bool t_al = A.dma_cell_g_aligned(dma, child.id, k, (int)gi);
                        if (s_al && t_al) {
                            g.direct = true;
                        } else if (!s_al && t_al) {
                            const auto& ctx = A.gate_context(sc.id, k, (int)gi);
                            for (size_t wi = 0; wi < ctx.W.size(); ++wi)
                                g.terms.push_back({ctx.v_g, ctx.W[wi], ctx.d_vg_to_W[wi]});
                        }
                    }
                }
                fn.groups.push_back(std::move(g));
            }
            if (fn.groups.empty())
                throw InternalInvariantViolation("DM cell has no DMA children");
        }
    }
    if (self_check) fn.check_corners(A);
    return fn;
}

}  // namespace l1geo
