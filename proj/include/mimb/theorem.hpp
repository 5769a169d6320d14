#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mimb/graph.hpp"
#include "mimb/simulate.hpp"

namespace mimb {

/// element i = Markov blanket of t in dag.intervene(fam.sets[i]).
std::vector<VarSet> oracle_mbs(const Dag& dag, VarId t, const InterventionFamily& fam);

struct RegimeClassification {
    std::size_t zeta_t = 0;
    ZetaRegime zeta_class = ZetaRegime::zero;
    bool conservative = false;
    bool conservative_minus_t = false;
    bool children_covered = false;    // ch(t) within the union of the sets
    bool children_untouched = false;  // no set touches ch(t)
    bool children_escape = false;     // every child is left alone by some set
};

RegimeClassification classify_regime(const Dag& dag, VarId t, const InterventionFamily& fam);

enum class UnionRelation { equals_mb, between_pa_and_mb, equals_ch_sp, subset_of_ch_sp };
enum class IntersectionRelation { equals_pa, equals_mb, superset_of_pa, empty, equals_ch_sp, subset_of_ch_sp };

const char* to_string(UnionRelation r);
const char* to_string(IntersectionRelation r);
const char* to_string(ZetaRegime r);

struct TheoremPrediction {
    UnionRelation union_relation = UnionRelation::equals_mb;
    /// Sharper claim inside the sandwich rows: union equals MB when every
    /// child is left unmanipulated by some experiment.
    bool union_exact = false;
    IntersectionRelation intersection_relation = IntersectionRelation::equals_pa;
    std::string union_row;         // U1..U6
    std::string intersection_row;  // I1..I6
    VarSet mb, pa, ch_sp;
};

TheoremPrediction predict(const Dag& dag, VarId t, const InterventionFamily& fam);

struct VerificationReport {
    RegimeClassification regime;
    TheoremPrediction prediction;
    std::vector<VarSet> mbs;
    VarSet union_set;
    VarSet intersection_set;
    bool union_pass = false;
    bool intersection_pass = false;

    bool pass() const { return union_pass && intersection_pass; }
};

VerificationReport verify(const Dag& dag, VarId t, const InterventionFamily& fam);
nlohmann::json to_json(const VerificationReport& r, const Dag& dag);

struct FuzzRow {
    std::string row;  // U1..U6, I1..I6
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::size_t vacuous = 0;  // no instance of the row could be drawn
    std::optional<nlohmann::json> witness;
};

struct FuzzSummary {
    std::vector<FuzzRow> rows;
    std::size_t total_failures() const;
};

/// Draws `trials` instances per table row and checks the row's claim on
/// each. Deterministic in the seed.
FuzzSummary fuzz_theorems(std::size_t trials, std::size_t min_nodes, std::size_t max_nodes, double edge_prob,
                          std::uint64_t seed);
nlohmann::json to_json(const FuzzSummary& s);

/// Graph + target + family as JSON, for reproducing a case.
nlohmann::json instance_json(const Dag& dag, VarId t, const InterventionFamily& fam);

}  // namespace mimb
