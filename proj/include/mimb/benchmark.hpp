#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mimb/metrics.hpp"
#include "mimb/network.hpp"
#include "mimb/simulate.hpp"

namespace mimb {

struct BenchmarkConfig {
    std::size_t n_datasets = 5;
    std::size_t samples = 5000;
    std::size_t reps = 10;
    double alpha = 0.01;
    double dirichlet_alpha = 1.0;
    std::size_t max_cond = 3;
    ZetaRegime regime = ZetaRegime::zero;
    bool conservative = true;
    bool cover_children = false;
    bool symmetry_correction = false;
    std::uint64_t seed = 1;
};

/// Scores of one algorithm on one repetition.
struct RunRecord {
    Score mb;
    Score pa;
    std::uint64_t n_test = 0;
    VarSet found_mb;
    VarSet found_pa;
};

struct AlgoSummary {
    MeanSd precision, recall, f1;           // blanket against MB(t)
    MeanSd pa_precision, pa_recall, pa_f1;  // intersection against pa(t)
    MeanSd n_test;
    std::vector<RunRecord> runs;
};

struct BenchmarkResult {
    AlgoSummary mimb;
    AlgoSummary baseline;
    std::vector<InterventionFamily> families;
};

/// Repetition r draws its family from derive_seed(seed, 2r) and its data
/// from derive_seed(seed, 2r+1); both algorithms see the same bundle.
BenchmarkResult run_benchmark(const BayesianNetwork& bn, VarId t, const BenchmarkConfig& cfg);

nlohmann::json to_json(const BenchmarkResult& r, const BayesianNetwork& bn, VarId t, const BenchmarkConfig& cfg);

}  // namespace mimb
