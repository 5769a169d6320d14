#include "mimb/hiton.hpp"

#include <algorithm>

#include "mimb/subsets.hpp"

namespace mimb {

namespace {

PcResult hiton_pc_plain(CiBackend& backend, std::size_t dataset, VarId t, const HitonOptions& opts) {
    const auto n = static_cast<VarId>(backend.variables());
    if (t < 0 || t >= n) throw InputError("target out of range");
    PcResult out;
    auto independent = [&](VarId v, const VarSet& s) {
        return backend.test(CiQuery{v, t, s, dataset}, opts.alpha).independent;
    };

    std::vector<std::pair<double, VarId>> ranked;
    for (VarId v = 0; v < n; ++v) {
        if (v == t) continue;
        const auto r = backend.test(CiQuery{v, t, {}, dataset}, opts.alpha);
        if (r.independent)
            out.sepsets[v] = {};
        else
            ranked.emplace_back(r.p_value, v);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<VarId> cpc;  // admission order
    for (const auto& [p, c] : ranked) {
        VarSet sep;
        const bool removed = for_each_subset_upto(VarSet(cpc.begin(), cpc.end()), 1, opts.max_cond,
                                                  [&](const VarSet& s) {
                                                      if (!independent(c, s)) return false;
                                                      sep = s;
                                                      return true;
                                                  });
        if (removed) {
            out.sepsets[c] = sep;
            continue;
        }
        cpc.push_back(c);
        // Older members: only subsets holding the newcomer are untested.
        const std::vector<VarId> members = cpc;
        for (VarId x : members) {
            if (x == c) continue;
            VarSet pool;
            for (VarId w : cpc)
                if (w != x) pool.push_back(w);
            const bool gone = for_each_subset_upto(sets::normalized(pool), 1, opts.max_cond, [&](const VarSet& s) {
                if (!sets::contains(s, c) || !independent(x, s)) return false;
                sep = s;
                return true;
            });
            if (gone) {
                out.sepsets[x] = sep;
                cpc.erase(std::find(cpc.begin(), cpc.end(), x));
            }
        }
    }
    out.pc = sets::normalized(cpc);
    return out;
}

}  // namespace

PcResult hiton_pc(CiBackend& backend, std::size_t dataset, VarId t, const HitonOptions& opts) {
    PcResult out = hiton_pc_plain(backend, dataset, t, opts);
    if (!opts.symmetry_correction) return out;
    VarSet kept;
    for (VarId u : out.pc) {
        auto other = hiton_pc_plain(backend, dataset, u, opts);
        if (sets::contains(other.pc, t))
            kept.push_back(u);
        else
            out.sepsets[u] = other.sepsets.at(t);
    }
    out.pc = kept;
    return out;
}

SingleMbResult hiton_mb(CiBackend& backend, std::size_t dataset, VarId t, const HitonOptions& opts) {
    auto pc = hiton_pc(backend, dataset, t, opts);
    SingleMbResult out;
    out.pc = pc.pc;
    out.mb = pc.pc;
    out.sepsets = pc.sepsets;
    for (VarId u : pc.pc) {
        const auto pcu = hiton_pc(backend, dataset, u, opts);
        for (VarId v : pcu.pc) {
            if (v == t || sets::contains(out.mb, v)) continue;
            const VarSet& sep = out.sepsets.at(v);
            // v is already separated from t by sep; a spouse becomes
            // dependent once the common child u joins the conditioning set.
            if (sets::contains(sep, u)) continue;
            if (!backend.test(CiQuery{v, t, sets::set_union(sep, {u}), dataset}, opts.alpha).independent)
                sets::insert(out.mb, v);
        }
    }
    return out;
}

BaselineResult baseline(CiBackend& backend, VarId t, const HitonOptions& opts) {
    BaselineResult out;
    const auto before = backend.ledger().snapshot();
    for (std::size_t i = 0; i < backend.datasets(); ++i) {
        out.per_dataset.push_back(hiton_mb(backend, i, t, opts));
        const auto& mb = out.per_dataset.back().mb;
        out.mb = sets::set_union(out.mb, mb);
        out.pa = i == 0 ? mb : sets::set_intersection(out.pa, mb);
    }
    const auto after = backend.ledger().snapshot();
    for (std::size_t i = 0; i < after.size(); ++i) {
        out.tests_per_dataset.push_back(after[i] - before[i]);
        out.n_test += after[i] - before[i];
    }
    return out;
}

}  // namespace mimb
