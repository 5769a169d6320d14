#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mimb/ci.hpp"
#include "mimb/hiton.hpp"

namespace mimb {

struct MipcOptions {
    double alpha = 0.01;
    std::size_t max_cond = 3;
    /// Admit Phase-1 candidates by ascending minimum marginal p-value
    /// instead of declaration order.
    bool rank_by_pvalue = false;
};

struct MipcResult {
    std::vector<VarId> cpc;  // admission order
    std::vector<VarSet> cmb;  // one per dataset
    SepsetMap sepset;
    /// Dataset where each sepset was established; nullopt means every
    /// dataset (marginal independence in all of them).
    std::map<VarId, std::optional<std::size_t>> sepset_origin;
    std::uint64_t n_test = 0;
};

MipcResult mipc(CiBackend& backend, VarId t, const MipcOptions& opts);

struct MimbOptions {
    double alpha = 0.01;
    std::size_t max_cond = 3;
    bool symmetry_correction = false;
    bool rank_by_pvalue = false;
};

struct SpouseRecord {
    VarId spouse;
    VarId via;  // the common neighbour that opened the path
    std::size_t dataset;
};

struct DiscoveryResult {
    VarSet mb;   // union of cmb
    VarSet pa;   // intersection of cmb
    VarSet cpc;  // after the optional symmetry correction
    std::vector<VarSet> cmb;
    SepsetMap sepset;
    std::map<VarId, VarSet> neighbour_cpc;  // cpc(v) for v in the first-stage cpc(t)
    std::vector<SpouseRecord> spouses;
    std::uint64_t n_test = 0;
    std::vector<std::uint64_t> tests_per_dataset;
};

DiscoveryResult mimb(CiBackend& backend, VarId t, const MimbOptions& opts);

/// Seven-variable worked example: E->A, E->B, A->T, B->T, T->G, C->G,
/// F->C in declaration order E, A, B, F, C, G, T, manipulated sets
/// {G}, {A}, {A,B}.
std::pair<Dag, InterventionFamily> reconstruct_trace_dag();

}  // namespace mimb
