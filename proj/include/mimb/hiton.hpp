#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mimb/ci.hpp"

namespace mimb {

using SepsetMap = std::map<VarId, VarSet>;

struct HitonOptions {
    double alpha = 0.01;
    std::size_t max_cond = 3;
    /// Keep u in pc(t) only when t is in pc(u). Off for the baseline.
    bool symmetry_correction = false;
};

struct PcResult {
    VarSet pc;
    SepsetMap sepsets;  // exactly the variables outside pc
};

struct SingleMbResult {
    VarSet pc;
    VarSet mb;
    SepsetMap sepsets;
};

/// Interleaved HITON-PC on one dataset of the backend.
PcResult hiton_pc(CiBackend& backend, std::size_t dataset, VarId t, const HitonOptions& opts);

/// HITON-MB: pc plus spouses found through each member's own pc.
SingleMbResult hiton_mb(CiBackend& backend, std::size_t dataset, VarId t, const HitonOptions& opts);

struct BaselineResult {
    VarSet mb;  // union of per-dataset blankets
    VarSet pa;  // intersection
    std::vector<SingleMbResult> per_dataset;
    std::uint64_t n_test = 0;
    std::vector<std::uint64_t> tests_per_dataset;
};

/// HITON-MB on every dataset independently, then union and intersection.
BaselineResult baseline(CiBackend& backend, VarId t, const HitonOptions& opts);

}  // namespace mimb
