#pragma once

#include <algorithm>
#include <cstddef>

#include "mimb/types.hpp"

namespace mimb {

/// Calls fn(subset) for every size-k subset of `pool`, in lexicographic
/// order of sorted member indices, until fn returns true. Returns whether
/// fn stopped the walk.
template <typename Fn>
bool for_each_subset(const VarSet& pool, std::size_t k, Fn&& fn) {
    const VarSet sorted = sets::normalized(pool);
    const std::size_t n = sorted.size();
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    VarSet subset(k);
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = sorted[idx[i]];
        if (fn(static_cast<const VarSet&>(subset))) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Subsets of `pool` with sizes lo..hi ascending, then lexicographic.
template <typename Fn>
bool for_each_subset_upto(const VarSet& pool, std::size_t lo, std::size_t hi, Fn&& fn) {
    hi = std::min(hi, pool.size());
    for (std::size_t k = lo; k <= hi; ++k)
        if (for_each_subset(pool, k, fn)) return true;
    return false;
}

}  // namespace mimb
