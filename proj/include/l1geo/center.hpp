#pragma once

#include <array>
#include <optional>
#include <vector>

#include "l1geo/cellfn.hpp"
#include "l1geo/diameter.hpp"

namespace l1geo {

/// One linear piece of a projected farthest-distance function over a cell.
struct LinearPatch {
    Ring region;  // convex subdomain of the cell
    Rat ax, ay, c;
    Rat eval(const Pt& q) const { return ax * q.x + ay * q.y + c; }
};

struct CenterResult {
    Pt center;
    Rat radius;
    Pt farthest;
    CellRef cell;
    bool unique = true;
    bool improved = false;
};

namespace centers {

using Affine = std::array<Rat, 3>;  // ax, ay, c

inline Rat affine_eval(const Affine& a, const Pt& q) { return a[0] * q.x + a[1] * q.y + a[2]; }

/// A globally valid underestimator of R_{sigma'}: the minimum of its affines.
/// On its home piece it equals the partial maximum exactly, elsewhere it only
/// stays below R; the envelope of all units over all pieces is R exactly.
struct REnvUnit {
    std::vector<Affine> affines;
};

struct FMRow {
    std::vector<Rat> coef;  // over (xq, yq, xt, yt, z)
    Rat rhs;
};

inline std::vector<FMRow> fm_eliminate(const std::vector<FMRow>& rows, int var) {
    std::vector<FMRow> pos, neg, out;
    for (auto& r : rows) {
        int s = rat_sign(r.coef[var]);
        if (s > 0) pos.push_back(r);
        else if (s < 0) neg.push_back(r);
        else out.push_back(r);
    }
    for (auto& p : pos)
        for (auto& n : neg) {
            FMRow r;
            r.coef.resize(p.coef.size());
            Rat mp = -n.coef[var], mn = p.coef[var];
            for (size_t k = 0; k < r.coef.size(); ++k)
                r.coef[k] = mp * p.coef[k] + mn * n.coef[k];
            r.rhs = mp * p.rhs + mn * n.rhs;
            r.coef[var] = Rat(0);
            out.push_back(std::move(r));
        }
    // normalize and dedupe (keeps the FM cascade small)
    for (auto& r : out) {
        Rat scale(0);
        for (auto& c : r.coef)
            if (c != 0) {
                scale = rat_abs(c);
                break;
            }
        if (scale == 0 && r.rhs != 0) scale = rat_abs(r.rhs);
        if (scale != 0) {
            for (auto& c : r.coef) c /= scale;
            r.rhs /= scale;
        }
    }
    std::vector<FMRow> dedup;
    for (auto& r : out) {
        bool keep = true;
        for (auto& d : dedup) {
            if (d.coef == r.coef) {
                if (r.rhs < d.rhs) d.rhs = r.rhs;
                keep = false;
                break;
            }
        }
        if (keep) dedup.push_back(r);
    }
    return dedup;
}

/// Drops affines whose removal cannot change the minimum anywhere in `box`.
inline void prune_redundant_affines(std::vector<Affine>& affines, const BBox& box) {
    for (size_t i = 0; i < affines.size();) {
        if (affines.size() == 1) break;
        LinearProgram lp(3);  // xq, yq, eps
        for (size_t k = 0; k < affines.size(); ++k) {
            if (k == i) continue;
            // other_k(q) - r(q) >= eps
            lp.add_ge({affines[k][0] - affines[i][0], affines[k][1] - affines[i][1], Rat(-1)},
                      affines[i][2] - affines[k][2]);
        }
        lp.add_le({Rat(1), Rat(0), Rat(0)}, box.xmax);
        lp.add_ge({Rat(1), Rat(0), Rat(0)}, box.xmin);
        lp.add_le({Rat(0), Rat(1), Rat(0)}, box.ymax);
        lp.add_ge({Rat(0), Rat(1), Rat(0)}, box.ymin);
        auto r = lp.maximize({Rat(0), Rat(0), Rat(1)});
        bool redundant = r.status == LinearProgram::Status::Infeasible ||
                         (r.status == LinearProgram::Status::Optimal && !(r.value > 0));
        if (redundant)
            affines.erase(affines.begin() + i);
        else
            ++i;
    }
}

/// Pointwise dominance of linear terms on a (q-piece, t-piece) box pair:
/// linear on both, so vertex pairs decide.
inline std::vector<LinTerm> prune_dominated_terms(const std::vector<LinTerm>& terms,
                                                  const Ring& qp, const Ring& tp) {
    std::vector<char> dead(terms.size(), 0);
    auto value = [&](const LinTerm& t, const Pt& q, const Pt& p) { return t.eval(q, p); };
    for (size_t i = 0; i < terms.size(); ++i) {
        for (size_t j = 0; j < terms.size() && !dead[i]; ++j) {
            if (i == j || dead[j]) continue;
            bool dominates = true;  // terms[j] <= terms[i] everywhere
            for (auto& q : qp)
                for (auto& p : tp)
                    if (value(terms[j], q, p) > value(terms[i], q, p)) dominates = false;
            if (dominates && j < i) dead[i] = 1;  // keep the earlier one on ties
            else if (dominates && j > i) {
                bool strict = false;
                for (auto& q : qp)
                    for (auto& p : tp)
                        if (value(terms[j], q, p) < value(terms[i], q, p)) strict = true;
                if (strict) dead[i] = 1;
            }
        }
    }
    std::vector<LinTerm> out;
    for (size_t i = 0; i < terms.size(); ++i)
        if (!dead[i]) out.push_back(terms[i]);
    return out;
}

/// Units of R_{sigma'} over the s-cell of `fn` (which must not be swapped):
/// direct regions give per-corner |q - w| sign pieces, term regions are
/// projected by Fourier-Motzkin elimination of the t variables.
inline std::vector<REnvUnit> collect_R_units(const CellPairDistFn& fn) {
    if (fn.swapped) throw InternalInvariantViolation("collect_R_units on a transposed pair");
    std::vector<REnvUnit> units;
    const DecompCell& sc = *fn.s_cell;
    for (auto& g : fn.groups) {
        if (g.direct) {
            std::vector<Pt> ws;
            for (auto& f : g.fragments)
                for (auto& w : f) ws.push_back(w);
            std::sort(ws.begin(), ws.end());
            ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
            for (auto& w : ws)
                for (int sx : {-1, 1})
                    for (int sy : {-1, 1}) {
                        REnvUnit u;
                        u.affines.push_back(
                            {Rat(sx), Rat(sy), -Rat(sx) * w.x - Rat(sy) * w.y});
                        units.push_back(std::move(u));
                    }
            continue;
        }
        std::vector<Rat> qx, qy, tx, ty;
        for (auto& term : g.terms) {
            qx.push_back(term.a.x);
            qy.push_back(term.a.y);
            tx.push_back(term.b.x);
            ty.push_back(term.b.y);
        }
        std::vector<Ring> q_pieces, t_pieces;
        for (auto& f : sc.fragments)
            for (auto& p : detail::refine_by_lines(f, qx, qy)) q_pieces.push_back(p);
        for (auto& f : g.fragments)
            for (auto& p : detail::refine_by_lines(f, tx, ty)) t_pieces.push_back(p);
        for (auto& qp : q_pieces) {
            Pt qm = convex_interior_point(qp);
            for (auto& tp : t_pieces) {
                Pt tm = convex_interior_point(tp);
                std::vector<LinTerm> active = prune_dominated_terms(g.terms, qp, tp);
                std::vector<FMRow> rows;
                for (auto& term : active) {
                    int sxs = detail::sign_or_one(qm.x - term.a.x);
                    int sys = detail::sign_or_one(qm.y - term.a.y);
                    int sxt = detail::sign_or_one(tm.x - term.b.x);
                    int syt = detail::sign_or_one(tm.y - term.b.y);
                    FMRow r;
                    r.coef = {Rat(-sxs), Rat(-sys), Rat(-sxt), Rat(-syt), Rat(1)};
                    r.rhs = term.c - Rat(sxs) * term.a.x - Rat(sys) * term.a.y -
                            Rat(sxt) * term.b.x - Rat(syt) * term.b.y;
                    rows.push_back(std::move(r));
                }
                size_t n = tp.size();
                for (size_t i = 0; i < n; ++i) {
                    const Pt& p = tp[i];
                    const Pt& q = tp[(i + 1) % n];
                    FMRow r;
                    r.coef = {Rat(0), Rat(0), q.y - p.y, -(q.x - p.x), Rat(0)};
                    r.rhs = (q.y - p.y) * p.x - (q.x - p.x) * p.y;
                    rows.push_back(std::move(r));
                }
                auto r1 = fm_eliminate(rows, 2);
                auto r2 = fm_eliminate(r1, 3);
                REnvUnit u;
                for (auto& r : r2) {
                    int zc = rat_sign(r.coef[4]);
                    if (zc < 0)
                        throw InternalInvariantViolation("negative z coefficient after FM");
                    if (zc == 0) {
                        if (r.coef[0] == 0 && r.coef[1] == 0) {
                            if (r.rhs < 0)
                                throw InternalInvariantViolation("FM derived an empty t-piece");
                            continue;
                        }
                        // q-constraint rows cannot arise: t-domain rows are q-free
                        throw InternalInvariantViolation("FM produced a q constraint");
                    }
                    // z <= (rhs - a xq - b yq) / zc
                    u.affines.push_back(
                        {-r.coef[0] / r.coef[4], -r.coef[1] / r.coef[4], r.rhs / r.coef[4]});
                }
                if (u.affines.empty())
                    throw InternalInvariantViolation("projection lost every bound");
                prune_redundant_affines(u.affines, sc.box);
                units.push_back(std::move(u));
            }
        }
    }
    return units;
}

/// Splits convex polygons by the pairwise-equality lines inside each unit, so
/// every unit is a single affine on each resulting face.
inline std::vector<Ring> refine_faces(const std::vector<Ring>& fragments,
                                      const std::vector<REnvUnit>& units) {
    std::vector<Ring> faces = fragments;
    for (auto& u : units) {
        for (size_t i = 0; i < u.affines.size(); ++i)
            for (size_t j = i + 1; j < u.affines.size(); ++j) {
                Rat a = u.affines[i][0] - u.affines[j][0];
                Rat b = u.affines[i][1] - u.affines[j][1];
                Rat c = u.affines[j][2] - u.affines[i][2];
                if (a == 0 && b == 0) continue;
                std::vector<Ring> next;
                for (auto& f : faces) {
                    Ring lo = clip_convex(f, a, b, c);
                    Ring hi = clip_convex(f, -a, -b, -c);
                    bool split = convex_nondegenerate(lo) && convex_nondegenerate(hi);
                    if (split) {
                        next.push_back(std::move(lo));
                        next.push_back(std::move(hi));
                    } else {
                        next.push_back(f);
                    }
                }
                faces = std::move(next);
            }
    }
    return faces;
}

inline const Affine& active_affine(const REnvUnit& u, const Pt& sample) {
    size_t best = 0;
    for (size_t k = 1; k < u.affines.size(); ++k)
        if (affine_eval(u.affines[k], sample) < affine_eval(u.affines[best], sample)) best = k;
    return u.affines[best];
}

}  // namespace centers

/// Projection R_{sigma'}(q) = max_{p in sigma'} d(p, q) over the s-cell of
/// `fn`, as linear patches tiling the cell.
inline std::vector<LinearPatch> project_R(const CellPairDistFn& fn) {
    using namespace centers;
    std::vector<REnvUnit> units = collect_R_units(fn);
    std::vector<LinearPatch> out;
    std::vector<Ring> faces = refine_faces(fn.s_cell->fragments, units);
    // within each face every unit is affine; split further until one affine
    // dominates at all face vertices
    std::vector<Ring> work = std::move(faces);
    while (!work.empty()) {
        Ring face = work.back();
        work.pop_back();
        Pt sample = convex_interior_point(face);
        std::vector<Affine> reps;
        for (auto& u : units) reps.push_back(active_affine(u, sample));
        // dominant affine at every vertex?
        std::optional<size_t> dominant;
        for (size_t cand = 0; cand < reps.size() && !dominant; ++cand) {
            bool ok = true;
            for (auto& v : face) {
                Rat cv = affine_eval(reps[cand], v);
                for (size_t o = 0; o < reps.size() && ok; ++o)
                    if (affine_eval(reps[o], v) > cv) ok = false;
                if (!ok) break;
            }
            if (ok) dominant = cand;
        }
        if (dominant) {
            out.push_back({face, reps[*dominant][0], reps[*dominant][1], reps[*dominant][2]});
            continue;
        }
        // find two contenders and split along their equality line
        size_t b0 = 0;
        Pt v0 = face[0];
        for (size_t o = 0; o < reps.size(); ++o)
            if (affine_eval(reps[o], v0) > affine_eval(reps[b0], v0)) b0 = o;
        std::optional<size_t> b1;
        for (auto& v : face) {
            size_t bi = 0;
            for (size_t o = 0; o < reps.size(); ++o)
                if (affine_eval(reps[o], v) > affine_eval(reps[bi], v)) bi = o;
            if (affine_eval(reps[bi], v) > affine_eval(reps[b0], v)) {
                b1 = bi;
                break;
            }
        }
        if (!b1) throw InternalInvariantViolation("envelope split found no contender");
        Rat a = reps[b0][0] - reps[*b1][0];
        Rat b = reps[b0][1] - reps[*b1][1];
        Rat c = reps[*b1][2] - reps[b0][2];
        Ring lo = clip_convex(face, a, b, c);
        Ring hi = clip_convex(face, -a, -b, -c);
        if (!convex_nondegenerate(lo) || !convex_nondegenerate(hi))
            throw InternalInvariantViolation("envelope split failed to separate contenders");
        work.push_back(std::move(lo));
        work.push_back(std::move(hi));
    }
    return out;
}

struct FarthestResult {
    Rat value;
    Pt witness;
};

namespace centers {

/// Exact farthest distance from q over a family of cells, with cheap pruning.
inline FarthestResult farthest_over_family(const Analysis& A,
                                           const std::vector<detail::CellInfo>& family,
                                           CellFamily q_family, const Pt& q) {
    const Decomposition& qdec = q_family == CellFamily::D ? A.D : A.Daug;
    CellRef qref{q_family, qdec.locate(q)};
    FarthestResult best;
    // lower bound: the farthest engine node
    const auto& dvq = A.engine->distances_to_nodes(q);
    bool seeded = false;
    for (size_t b = 0; b < dvq.size(); ++b) {
        if (!dvq[b]) continue;
        if (!seeded || *dvq[b] > best.value) {
            best.value = *dvq[b];
            best.witness = A.engine->nodes()[b];
            seeded = true;
        }
    }
    if (!seeded) throw InternalInvariantViolation("farthest query found no nodes");
    for (auto& ci : family) {
        // upper bound via any common engine node
        std::optional<Rat> ub;
        for (size_t b = 0; b < dvq.size(); ++b) {
            if (!dvq[b] || !(*ci.dvec)[b]) continue;
            Rat cand = *dvq[b] + *(*ci.dvec)[b];
            if (!ub || cand < *ub) ub = cand;
        }
        if (ub && !((*ub + ci.rad) > best.value)) continue;
        CellPairDistFn fn = build_cellpair_fn(A, qref, ci.ref);
        auto r = fn.maximize_over_t(q, best.value);
        if (r.valid && r.value > best.value) {
            best.value = r.value;
            best.witness = r.t;
        }
    }
    return best;
}

}  // namespace centers

/// R(q): exact farthest geodesic distance from q, maximized over the
/// combined cell family (sufficient by the pocket-boundary lemma).
inline FarthestResult eval_R(const Analysis& A, const Pt& q) {
    if (!A.P.contains(q)) throw OutOfDomain("eval_R: point outside the domain");
    auto family = detail::diameter_cells(A, true);
    return centers::farthest_over_family(A, family, CellFamily::DAug, q);
}

/// Geodesic center: for each cell, minimize the upper envelope of the
/// projected farthest functions over the chosen family; the best constrained
/// center wins. Exact throughout (face refinement + per-face LPs).
inline CenterResult compute_center(const Analysis& A, bool improved, bool self_check = true) {
    using namespace centers;
    auto family = detail::diameter_cells(A, improved);
    CellFamily side = improved ? CellFamily::DAug : CellFamily::D;
    const Decomposition& dec = improved ? A.Daug : A.D;

    CenterResult best;
    best.improved = improved;
    // initial candidate: the first cell sample (any interior point works)
    {
        Pt q0 = dec.cells().front().sample();
        auto f = farthest_over_family(A, family, side, q0);
        best.center = q0;
        best.radius = f.value;
        best.farthest = f.witness;
        best.cell = {side, dec.cells().front().id};
    }

    for (auto& sc : dec.cells()) {
        // skip cells that provably cannot improve on the best radius
        Pt rep = sc.corners.empty() ? sc.poly[0] : sc.corners[0];
        Rat rad = (sc.box.xmax - sc.box.xmin) + (sc.box.ymax - sc.box.ymin);
        if (A.dist(rep, best.farthest) - rad > best.radius) continue;

        CellRef sref{side, sc.id};
        // prune the family for this cell
        const auto& dvs = A.engine->distances_to_nodes(rep);
        std::optional<Rat> lbmax;
        std::vector<std::pair<const detail::CellInfo*, Rat>> scored;
        for (auto& ci : family) {
            std::optional<Rat> through;
            for (size_t b = 0; b < dvs.size(); ++b) {
                if (!dvs[b] || !(*ci.dvec)[b]) continue;
                Rat cand = *dvs[b] + *(*ci.dvec)[b];
                if (!through || cand < *through) through = cand;
            }
            if (!through) continue;
            Rat ub = *through + ci.rad + rad;
            Rat lb = A.dist(ci.rep, rep) - ci.rad - rad;
            if (!lbmax || lb > *lbmax) lbmax = lb;
            scored.push_back({&ci, ub});
        }
        std::vector<REnvUnit> units;
        for (auto& [ci, ub] : scored) {
            if (lbmax && ub < *lbmax) continue;  // never on the envelope over this cell
            CellPairDistFn fn = build_cellpair_fn(A, sref, ci->ref, self_check);
            for (auto& u : collect_R_units(fn)) units.push_back(std::move(u));
        }
        if (units.empty()) continue;

        std::vector<Ring> faces = refine_faces(sc.fragments, units);
        for (auto& face : faces) {
            Pt sample = convex_interior_point(face);
            LinearProgram lp(3);  // xq, yq, z
            for (auto& u : units) {
                const Affine& a = active_affine(u, sample);
                // z >= a(q)
                lp.add_ge({-a[0], -a[1], Rat(1)}, a[2]);
            }
            detail::add_convex_rows(lp, face, 0, 1);
            auto r = lp.maximize({Rat(0), Rat(0), Rat(-1)});
            if (r.status != LinearProgram::Status::Optimal)
                throw InternalInvariantViolation("center face LP failed");
            Rat value = -r.value;
            Pt q(r.point[0], r.point[1]);
            if (value < best.radius || (value == best.radius && q < best.center)) {
                auto check = farthest_over_family(A, family, side, q);
                if (check.value != value)
                    throw InternalInvariantViolation(
                        "center envelope disagrees with the farthest re-check");
                best.radius = value;
                best.center = q;
                best.farthest = check.witness;
                best.cell = sref;
            }
        }
    }

    // optimality audit and uniqueness flag on the winning cell
    auto audit = farthest_over_family(A, family, side, best.center);
    if (audit.value != best.radius)
        throw InternalInvariantViolation("center radius failed the farthest re-check");
    best.farthest = audit.witness;

    // non-uniqueness: the optimal set within the winning cell has >1 point
    {
        const DecompCell& sc = dec.cells()[best.cell.id];
        CellRef sref{side, sc.id};
        std::vector<REnvUnit> units;
        for (auto& ci : family) {
            CellPairDistFn fn = build_cellpair_fn(A, sref, ci.ref);
            for (auto& u : collect_R_units(fn)) units.push_back(std::move(u));
        }
        std::vector<Ring> faces = refine_faces(sc.fragments, units);
        std::vector<Pt> optimal_points;
        for (auto& face : faces) {
            Pt sample = convex_interior_point(face);
            Ring region = face;
            for (auto& u : units) {
                const centers::Affine& a = centers::active_affine(u, sample);
                region = clip_convex(region, a[0], a[1], best.radius - a[2]);
                if (region.empty()) break;
            }
            for (auto& p : region) {
                if (farthest_over_family(A, family, side, p).value == best.radius)
                    optimal_points.push_back(p);
                if (optimal_points.size() > 4) break;
            }
            if (optimal_points.size() > 4) break;
        }
        std::sort(optimal_points.begin(), optimal_points.end());
        optimal_points.erase(std::unique(optimal_points.begin(), optimal_points.end()),
                             optimal_points.end());
        if (optimal_points.size() > 1) best.unique = false;
        if (!optimal_points.empty() && optimal_points.front() < best.center) {
            best.center = optimal_points.front();
            auto f = farthest_over_family(A, family, side, best.center);
            best.farthest = f.witness;
        }
    }
    return best;
}

inline CenterResult center_preliminary(const Analysis& A, bool self_check = true) {
    return compute_center(A, false, self_check);
}
inline CenterResult center_improved(const Analysis& A, bool self_check = true) {
    return compute_center(A, true, self_check);
}

}  // namespace l1geo
