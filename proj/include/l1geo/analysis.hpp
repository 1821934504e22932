#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "l1geo/corridor.hpp"
#include "l1geo/decomposition.hpp"
#include "l1geo/funnel.hpp"
#include "l1geo/oracle.hpp"
#include "l1geo/visgraph.hpp"

namespace l1geo {

struct MissingContext : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoDominantVertex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything the diameter/center algorithms need about one domain, built
/// once: corridor structure, decompositions, engines, and lazy caches for
/// distances and per-gate funnels.
class Analysis {
  public:
    PolygonalDomain P;
    CorridorStructure S;
    Decomposition D;     // plain decomposition (preliminary algorithms)
    Decomposition Daug;  // augmented decomposition (improved algorithms)
    Decomposition DM;
    std::vector<DfCell> Df;
    std::unique_ptr<DistanceEngine> engine;

    static Analysis build(const PolygonalDomain& domain) {
        Analysis a;
        a.P = domain;
        a.S = build_corridor_structure(domain);
        a.D = build_D(domain);
        a.DM = build_DM(a.S);
        a.Daug = augment_D(domain, a.D, a.DM);
        a.Daug.classify_oceanic(a.S.pockets);
        a.Daug.compute_parents(a.DM, true);
        a.D.classify_oceanic(a.S.pockets);
        a.Df = build_Df(domain, a.Daug, a.DM);
        a.engine = std::make_unique<DistanceEngine>(Environment::from_domain(domain));
        // coastal cells of the augmented decomposition: which pockets they meet
        a.cell_pockets_.resize(a.Daug.cells().size());
        for (auto& c : a.Daug.cells()) {
            if (c.oceanic) continue;
            for (size_t k = 0; k < a.S.pockets.size(); ++k)
                if (Decomposition::polygon_interiors_intersect(c.poly, a.S.pockets[k].ring))
                    a.cell_pockets_[c.id].push_back((int)k);
        }
        return a;
    }

    /// Exact geodesic distance with per-pair caching.
    const Rat& dist(const Pt& a, const Pt& b) const {
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        auto it = dist_cache_.find(key);
        if (it != dist_cache_.end()) return it->second;
        Rat d = engine->distance(a, b);
        return dist_cache_.emplace(key, std::move(d)).first->second;
    }

    const std::vector<int>& pockets_of(int daug_cell) const { return cell_pockets_[daug_cell]; }

    /// Geodesics inside the closure of a pocket (gates included).
    const SimplePolygonGeodesics& pocket_geodesics(int pocket) const {
        auto it = pocket_geo_.find(pocket);
        if (it != pocket_geo_.end()) return *it->second;
        auto geo = std::make_unique<SimplePolygonGeodesics>(S.pockets[pocket].ring);
        return *pocket_geo_.emplace(pocket, std::move(geo)).first->second;
    }

    /// D_M refined by the gate endpoints of a set of pockets.
    const Decomposition& dma_for(const std::vector<int>& pockets) const {
        std::vector<int> key = pockets;
        std::sort(key.begin(), key.end());
        auto it = dma_cache_.find(key);
        if (it != dma_cache_.end()) return *it->second;
        PolygonalDomain M = S.ocean.as_domain();
        std::vector<Pt> sources = dm_diagonal_sources(S);
        for (int k : pockets)
            for (auto& g : S.pockets[k].gates) {
                sources.push_back(g.a);
                sources.push_back(g.b);
            }
        std::sort(sources.begin(), sources.end());
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
        auto dec = std::make_unique<Decomposition>(
            build_decomposition(M, sources, {}, {}, DecompFlavor::DMA));
        dec->compute_parents(DM);
        return *dma_cache_.emplace(std::move(key), std::move(dec)).first->second;
    }

    struct GateContext {
        Pt v_g;
        Pt apex;
        std::vector<Pt> W;          // extreme chain points (anchors near the gate)
        std::vector<Rat> d_vg_to_W; // geodesic length inside the pocket closure
    };

    /// v_g, its funnel to the gate, and the extreme-point anchors W_g(v_g),
    /// for a coastal cell that meets pocket A and is not g-aligned.
    const GateContext& gate_context(int daug_cell, int pocket, int gate_idx) const {
        auto key = std::make_tuple(daug_cell, pocket, gate_idx);
        auto it = gate_cache_.find(key);
        if (it != gate_cache_.end()) return it->second;

        const DecompCell& cell = Daug.cells()[daug_cell];
        const Pocket& A = S.pockets[pocket];
        const Seg& g = A.gates[gate_idx];
        const SimplePolygonGeodesics& geo = pocket_geodesics(pocket);

        // candidates: cell corners inside the pocket closure
        std::vector<Pt> candidates;
        for (auto& v : cell.corners)
            if (geo.contains(v)) candidates.push_back(v);
        if (candidates.empty())
            throw MissingContext("no cell corner inside the pocket for the gate test");

        std::map<Pt, GateDistFn> fv;
        for (auto& v : candidates) fv.emplace(v, geo.gate_distance_function(v, g));
        std::optional<Pt> dominant;
        for (auto& v : candidates) {
            bool ok = true;
            for (auto& w : candidates) {
                if (w == v) continue;
                // f_v(x) + |vw| <= f_w(x) at every breakpoint of both functions
                Rat vw = l1_dist(v, w);
                std::vector<Rat> breaks = fv.at(v).breaks;
                breaks.insert(breaks.end(), fv.at(w).breaks.begin(), fv.at(w).breaks.end());
                std::sort(breaks.begin(), breaks.end());
                for (auto& t : breaks)
                    if (fv.at(v).eval(t) + vw > fv.at(w).eval(t)) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            if (ok) {
                dominant = v;
                break;
            }
        }
        if (!dominant) throw NoDominantVertex("no dominant cell corner toward the gate");

        GateContext ctx;
        ctx.v_g = *dominant;
        Funnel f = geo.funnel_to_edge(ctx.v_g, g);
        ctx.apex = f.apex;
        Rat prefix_len = path_l1_length(f.prefix);
        auto add_chain = [&](const PolyPath& chain) {
            // chain runs apex .. gate endpoint
            std::vector<Rat> prefix_sums{Rat(0)};
            for (size_t i = 1; i < chain.size(); ++i)
                prefix_sums.push_back(prefix_sums.back() + l1_dist(chain[i - 1], chain[i]));
            auto add_w = [&](size_t idx) {
                const Pt& w = chain[idx];
                for (size_t i = 0; i < ctx.W.size(); ++i)
                    if (ctx.W[i] == w) return;
                ctx.W.push_back(w);
                ctx.d_vg_to_W.push_back(prefix_len + prefix_sums[idx]);
            };
            size_t lx = 0, hx = 0, ly = 0, hy = 0;
            for (size_t i = 1; i < chain.size(); ++i) {
                if (chain[i].x < chain[lx].x) lx = i;
                if (chain[i].x > chain[hx].x) hx = i;
                if (chain[i].y < chain[ly].y) ly = i;
                if (chain[i].y > chain[hy].y) hy = i;
            }
            add_w(lx);
            add_w(hx);
            add_w(ly);
            add_w(hy);
            add_w(0);                  // apex
            add_w(chain.size() - 1);   // gate endpoint
        };
        add_chain(f.chain_a);
        add_chain(f.chain_b);
        return gate_cache_.emplace(key, std::move(ctx)).first->second;
    }

    bool cell_g_aligned(int daug_cell, int pocket, int gate_idx) const {
        auto key = std::make_tuple(daug_cell, pocket, gate_idx);
        auto it = galign_cache_.find(key);
        if (it != galign_cache_.end()) return it->second;
        bool r = g_aligned(P, S.pockets[pocket].gates[gate_idx], Daug.cells()[daug_cell]);
        return galign_cache_.emplace(key, r).first->second;
    }

    /// g-alignedness for a DMA child cell.
    bool dma_cell_g_aligned(const Decomposition& dma, int cell, int pocket, int gate_idx) const {
        return point_in_gate_region(P, S.pockets[pocket].gates[gate_idx],
                                    dma.cells()[cell].sample());
    }

  private:
    std::vector<std::vector<int>> cell_pockets_;
    mutable std::map<std::pair<Pt, Pt>, Rat> dist_cache_;
    mutable std::map<int, std::unique_ptr<SimplePolygonGeodesics>> pocket_geo_;
    mutable std::map<std::vector<int>, std::unique_ptr<Decomposition>> dma_cache_;
    mutable std::map<std::tuple<int, int, int>, GateContext> gate_cache_;
    mutable std::map<std::tuple<int, int, int>, bool> galign_cache_;
};

}  // namespace l1geo
