#include "mimb/mimb.hpp"

#include <algorithm>
#include <limits>

#include "mimb/subsets.hpp"

namespace mimb {

namespace {

void erase_ordered(std::vector<VarId>& v, VarId x) {
    auto it = std::find(v.begin(), v.end(), x);
    if (it != v.end()) v.erase(it);
}

std::uint64_t ledger_delta(const std::vector<std::uint64_t>& before, const std::vector<std::uint64_t>& after,
                           std::vector<std::uint64_t>* per_dataset = nullptr) {
    std::uint64_t total = 0;
    if (per_dataset) per_dataset->assign(after.size(), 0);
    for (std::size_t i = 0; i < after.size(); ++i) {
        total += after[i] - before[i];
        if (per_dataset) (*per_dataset)[i] = after[i] - before[i];
    }
    return total;
}

}  // namespace

MipcResult mipc(CiBackend& backend, VarId t, const MipcOptions& opts) {
    const auto nv = static_cast<VarId>(backend.variables());
    const auto nd = backend.datasets();
    if (t < 0 || t >= nv) throw InputError("target out of range");
    if (opts.max_cond < 1) throw InputError("max conditioning size must be at least 1");
    const auto before = backend.ledger().snapshot();

    MipcResult r;
    r.cmb.assign(nd, {});

    // Phase 1: marginal dependence in each dataset.
    std::vector<std::pair<double, VarId>> admitted;
    for (VarId v = 0; v < nv; ++v) {
        if (v == t) continue;
        double best = std::numeric_limits<double>::infinity();
        bool any = false;
        for (std::size_t i = 0; i < nd; ++i) {
            const auto res = backend.test(CiQuery{v, t, {}, i}, opts.alpha);
            if (!res.independent) {
                any = true;
                best = std::min(best, res.p_value);
                sets::insert(r.cmb[i], v);
            }
        }
        if (any) {
            admitted.emplace_back(best, v);
        } else {
            r.sepset[v] = {};
            r.sepset_origin[v] = std::nullopt;
        }
    }
    if (opts.rank_by_pvalue)
        std::stable_sort(admitted.begin(), admitted.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });

    // Search (S, k): S over non-empty subsets of `pool` by size then
    // lexicographic order, k over datasets holding y and all of S.
    auto separate = [&](VarId y, const VarSet& pool, VarId must_hold, VarSet& sep, std::size_t& where) {
        return for_each_subset_upto(pool, 1, opts.max_cond, [&](const VarSet& s) {
            if (must_hold >= 0 && !sets::contains(s, must_hold)) return false;
            for (std::size_t k = 0; k < nd; ++k) {
                if (!sets::contains(r.cmb[k], y) || !sets::is_subset(s, r.cmb[k])) continue;
                if (backend.test(CiQuery{y, t, s, k}, opts.alpha).independent) {
                    sep = s;
                    where = k;
                    return true;
                }
            }
            return false;
        });
    };

    // Phase 2: grow ipc one candidate at a time.
    std::vector<VarId> ipc;
    for (const auto& [p, v] : admitted) {
        VarSet sep;
        std::size_t where = 0;
        if (separate(v, sets::normalized(ipc), -1, sep, where)) {
            for (auto& c : r.cmb) sets::erase(c, v);
            r.sepset[v] = sep;
            r.sepset_origin[v] = where;
            continue;
        }
        ipc.push_back(v);
        const std::vector<VarId> members = ipc;
        for (VarId y : members) {
            if (y == v) continue;
            VarSet pool;
            for (VarId w : ipc)
                if (w != y) pool.push_back(w);
            if (separate(y, sets::normalized(pool), v, sep, where)) {
                erase_ordered(ipc, y);
                for (auto& c : r.cmb) sets::erase(c, y);
                r.sepset[y] = sep;
                r.sepset_origin[y] = where;
            }
        }
    }
    r.cpc = ipc;
    r.n_test = ledger_delta(before, backend.ledger().snapshot());
    return r;
}

DiscoveryResult mimb(CiBackend& backend, VarId t, const MimbOptions& opts) {
    const auto before = backend.ledger().snapshot();
    const MipcOptions mo{opts.alpha, opts.max_cond, opts.rank_by_pvalue};
    auto first = mipc(backend, t, mo);

    DiscoveryResult out;
    out.cmb = first.cmb;
    out.sepset = first.sepset;
    auto origin = first.sepset_origin;
    std::vector<VarId> cpc = first.cpc;

    std::map<VarId, std::vector<VarId>> around;
    for (VarId v : first.cpc) {
        auto mv = mipc(backend, v, mo);
        around[v] = mv.cpc;
        out.neighbour_cpc[v] = sets::normalized(mv.cpc);
        if (opts.symmetry_correction && !sets::contains_unsorted(mv.cpc, t)) {
            erase_ordered(cpc, v);
            for (auto& c : out.cmb) sets::erase(c, v);
            out.sepset[v] = mv.sepset.at(t);
            origin[v] = mv.sepset_origin.at(t);
        }
    }

    const VarSet cpc_set = sets::normalized(cpc);
    for (VarId v : cpc) {
        for (VarId x : around.at(v)) {
            if (x == t || sets::contains(cpc_set, x)) continue;
            auto it = out.sepset.find(x);
            if (it == out.sepset.end()) throw InvariantError("no separating set recorded for a non-candidate");
            const VarSet& sep = it->second;
            if (sets::contains(sep, v)) continue;
            const VarSet opened = sets::set_union(sep, {v});
            for (std::size_t k = 0; k < out.cmb.size(); ++k) {
                if (!sets::contains(out.cmb[k], v)) continue;
                if (sets::contains(out.cmb[k], x)) break;
                // The separation itself is only known in the dataset (or
                // datasets) where it was found.
                const auto& o = origin.at(x);
                const bool known = !o.has_value() || *o == k;
                if (!known && !backend.test(CiQuery{x, t, sep, k}, opts.alpha).independent) continue;
                if (backend.test(CiQuery{x, t, opened, k}, opts.alpha).independent) continue;
                sets::insert(out.cmb[k], x);
                out.spouses.push_back({x, v, k});
                break;
            }
        }
    }

    out.cpc = cpc_set;
    for (std::size_t i = 0; i < out.cmb.size(); ++i) {
        out.mb = sets::set_union(out.mb, out.cmb[i]);
        out.pa = i == 0 ? out.cmb[i] : sets::set_intersection(out.pa, out.cmb[i]);
    }
    out.n_test = ledger_delta(before, backend.ledger().snapshot(), &out.tests_per_dataset);
    return out;
}

std::pair<Dag, InterventionFamily> reconstruct_trace_dag() {
    auto dag = Dag::from_names({"E", "A", "B", "F", "C", "G", "T"}, {{"E", "A"},
                                                                      {"E", "B"},
                                                                      {"A", "T"},
                                                                      {"B", "T"},
                                                                      {"T", "G"},
                                                                      {"C", "G"},
                                                                      {"F", "C"}});
    InterventionFamily fam{{dag.to_set({"G"}), dag.to_set({"A"}), dag.to_set({"A", "B"})}};
    return {std::move(dag), std::move(fam)};
}

}  // namespace mimb
