#pragma once

#include <optional>
#include <string>
#include <vector>

#include "l1geo/cellfn.hpp"

namespace l1geo {

struct DiameterResult {
    Rat value;
    Pt s, t;            // witness pair; value = d(s, t), re-verified by the engine
    CellRef cell_s, cell_t;
    bool improved = false;
};

namespace detail {

struct CellInfo {
    CellRef ref;
    const DecompCell* cell;
    Pt rep;
    Rat rad;  // L1 radius bound of the cell around any of its points
    const std::vector<std::optional<Rat>>* dvec;  // distances rep -> engine nodes
};

inline CellInfo make_cell_info(const Analysis& A, CellRef ref) {
    CellInfo ci;
    ci.ref = ref;
    ci.cell = ref.family == CellFamily::D
                  ? &A.D.cells()[ref.id]
                  : (ref.family == CellFamily::DAug ? &A.Daug.cells()[ref.id]
                                                    : &A.DM.cells()[ref.id]);
    ci.rep = ci.cell->corners.empty() ? ci.cell->poly[0] : ci.cell->corners[0];
    ci.rad = (ci.cell->box.xmax - ci.cell->box.xmin) + (ci.cell->box.ymax - ci.cell->box.ymin);
    ci.dvec = &A.engine->distances_to_nodes(ci.rep);
    return ci;
}

inline std::vector<CellInfo> diameter_cells(const Analysis& A, bool improved) {
    std::vector<CellInfo> out;
    if (improved) {
        for (auto& ref : A.Df)
            out.push_back(make_cell_info(
                A, ref.from_dm ? CellRef{CellFamily::DM, ref.cell}
                               : CellRef{CellFamily::DAug, ref.cell}));
    } else {
        for (auto& c : A.D.cells()) out.push_back(make_cell_info(A, {CellFamily::D, c.id}));
    }
    return out;
}

/// d(rep_i, rep_j) <= min_b (d(rep_i,b) + d(b,rep_j)); adding both cell radii
/// bounds the constrained maximum of the pair.
inline std::optional<Rat> pair_upper_bound(const CellInfo& a, const CellInfo& b) {
    std::optional<Rat> best;
    for (size_t k = 0; k < a.dvec->size(); ++k) {
        if (!(*a.dvec)[k] || !(*b.dvec)[k]) continue;
        Rat cand = *(*a.dvec)[k] + *(*b.dvec)[k];
        if (!best || cand < *best) best = cand;
    }
    if (!best) return std::nullopt;
    return *best + a.rad + b.rad;
}

}  // namespace detail

/// Geodesic diameter by maximizing the restricted distance over every cell
/// pair. The preliminary variant runs on the plain decomposition, the
/// improved one on the combined family; cheap upper bounds prune pairs that
/// cannot beat the best vertex-pair distance.
inline DiameterResult compute_diameter(const Analysis& A, bool improved, bool self_check = true) {
    auto cells = detail::diameter_cells(A, improved);

    DiameterResult best;
    best.improved = improved;
    best.value = Rat(0);
    // seed with the best obstacle-vertex pair: a valid witness on its own,
    // and the pruning bar for the pair loop (it usually is the diameter)
    const auto& nodes = A.engine->nodes();
    bool seeded = false;
    for (size_t i = 0; i < nodes.size(); ++i) {
        const auto& dv = A.engine->distances_to_nodes(nodes[i]);
        for (size_t j = i + 1; j < nodes.size(); ++j) {
            if (!dv[j]) continue;
            if (!seeded || *dv[j] > best.value) {
                best.value = *dv[j];
                best.s = nodes[i];
                best.t = nodes[j];
                seeded = true;
            }
        }
    }

    for (size_t i = 0; i < cells.size(); ++i) {
        for (size_t j = i; j < cells.size(); ++j) {
            auto ub = detail::pair_upper_bound(cells[i], cells[j]);
            if (ub && seeded && !(*ub > best.value)) continue;
            CellPairDistFn fn = build_cellpair_fn(A, cells[i].ref, cells[j].ref, self_check);
            auto r = fn.maximize(seeded ? std::optional<Rat>(best.value) : std::nullopt);
            if (!r.valid) continue;
            if (!seeded || r.value > best.value) {
                best.value = r.value;
                best.s = r.s;
                best.t = r.t;
                seeded = true;
            }
        }
    }
    if (!seeded) throw InternalInvariantViolation("diameter search found nothing");
    const Decomposition& loc = improved ? A.Daug : A.D;
    best.cell_s = {improved ? CellFamily::DAug : CellFamily::D, loc.locate(best.s)};
    best.cell_t = {improved ? CellFamily::DAug : CellFamily::D, loc.locate(best.t)};
    // the result must be a true geodesic distance
    if (A.engine->distance(best.s, best.t) != best.value)
        throw InternalInvariantViolation("diameter witness failed engine re-verification");
    return best;
}

inline DiameterResult diameter_preliminary(const Analysis& A, bool self_check = true) {
    return compute_diameter(A, false, self_check);
}
inline DiameterResult diameter_improved(const Analysis& A, bool self_check = true) {
    return compute_diameter(A, true, self_check);
}

}  // namespace l1geo
