#pragma once

#include <cstdint>

#include "mimb/dataset.hpp"
#include "mimb/graph.hpp"
#include "mimb/network.hpp"

namespace mimb {

/// Ancestral sampling in topological order. n_rows must be >= 1.
Dataset forward_sample(const BayesianNetwork& bn, std::size_t n_rows, std::uint64_t seed);

/// Network over dag.intervene(targets): each target gets one parent-free
/// row drawn from a symmetric Dirichlet(alpha); other tables are copied.
BayesianNetwork randomize_manipulated_cpts(const BayesianNetwork& bn, const VarSet& targets, double dirichlet_alpha,
                                           std::uint64_t seed);

enum class ZetaRegime { zero, mid, all };

struct FamilyOptions {
    ZetaRegime regime = ZetaRegime::zero;
    bool require_conservative = false;
    bool require_children_covered = false;
    /// Manipulated non-target variables per experiment are uniform on
    /// {1..max}. 0 picks ceil(|V| / 5).
    std::size_t max_targets_per_set = 0;
};

/// Throws ConstraintError when the options cannot be met.
InterventionFamily generate_intervention_family(const Dag& dag, VarId t, std::size_t n_datasets,
                                                const FamilyOptions& opts, std::uint64_t seed);

/// Dataset i uses derive_seed(seed, i); inside it, stream 0 draws the
/// manipulated tables and stream 1 the rows.
DatasetBundle generate_bundle(const BayesianNetwork& bn, const InterventionFamily& fam, std::size_t rows_per_dataset,
                              double dirichlet_alpha, std::uint64_t seed);

/// Variables X0..X{n-1}; each pair ordered by a random permutation gets an
/// edge with probability edge_prob.
Dag random_dag(std::size_t n_nodes, double edge_prob, std::uint64_t seed);

/// States s0..s{k-1}; every CPT row Dirichlet(alpha).
BayesianNetwork random_cpts(const Dag& dag, int cardinality, double dirichlet_alpha, std::uint64_t seed);

}  // namespace mimb
