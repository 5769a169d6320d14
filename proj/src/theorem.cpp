#include "mimb/theorem.hpp"

#include <functional>

#include <fmt/format.h>

#include "mimb/random.hpp"

using nlohmann::json;

namespace mimb {

std::vector<VarSet> oracle_mbs(const Dag& dag, VarId t, const InterventionFamily& fam) {
    dag.check_var(t);
    fam.validate(dag);
    std::vector<VarSet> out;
    for (const auto& s : fam.sets) out.push_back(dag.intervene(s).markov_blanket(t));
    return out;
}

RegimeClassification classify_regime(const Dag& dag, VarId t, const InterventionFamily& fam) {
    dag.check_var(t);
    fam.validate(dag);
    RegimeClassification c;
    c.zeta_t = fam.zeta(t);
    c.zeta_class = c.zeta_t == 0 ? ZetaRegime::zero : c.zeta_t == fam.size() ? ZetaRegime::all : ZetaRegime::mid;
    c.conservative = is_conservative(fam);
    c.conservative_minus_t = is_conservative_excluding(fam, t);
    const auto& ch = dag.children(t);
    c.children_covered = sets::is_subset(ch, fam.manipulated());
    c.children_untouched = true;
    c.children_escape = true;
    for (VarId v : ch) {
        const auto z = fam.zeta(v);
        if (z > 0) c.children_untouched = false;
        if (z == fam.size()) c.children_escape = false;
    }
    return c;
}

const char* to_string(UnionRelation r) {
    switch (r) {
        case UnionRelation::equals_mb: return "equals-MB";
        case UnionRelation::between_pa_and_mb: return "between-pa-and-MB";
        case UnionRelation::equals_ch_sp: return "equals-ch-sp";
        case UnionRelation::subset_of_ch_sp: return "subset-of-ch-sp";
    }
    return "?";
}

const char* to_string(IntersectionRelation r) {
    switch (r) {
        case IntersectionRelation::equals_pa: return "equals-pa";
        case IntersectionRelation::equals_mb: return "equals-MB";
        case IntersectionRelation::superset_of_pa: return "superset-of-pa";
        case IntersectionRelation::empty: return "empty";
        case IntersectionRelation::equals_ch_sp: return "equals-ch-sp";
        case IntersectionRelation::subset_of_ch_sp: return "subset-of-ch-sp";
    }
    return "?";
}

const char* to_string(ZetaRegime r) {
    switch (r) {
        case ZetaRegime::zero: return "zero";
        case ZetaRegime::mid: return "mid";
        case ZetaRegime::all: return "all";
    }
    return "?";
}

TheoremPrediction predict(const Dag& dag, VarId t, const InterventionFamily& fam) {
    const auto c = classify_regime(dag, t, fam);
    TheoremPrediction p;
    p.mb = dag.markov_blanket(t);
    p.pa = dag.parents(t);
    p.ch_sp = sets::set_union(dag.children(t), dag.spouses(t));

    switch (c.zeta_class) {
        case ZetaRegime::zero:
            if (c.conservative) {
                p.union_row = "U1";
                p.union_relation = UnionRelation::equals_mb;
            } else {
                p.union_row = "U2";
                p.union_relation = UnionRelation::between_pa_and_mb;
                p.union_exact = c.children_escape;
            }
            if (c.children_covered) {
                p.intersection_row = "I1";
                p.intersection_relation = IntersectionRelation::equals_pa;
            } else {
                p.intersection_row = "I2";
                p.intersection_relation =
                    c.children_untouched ? IntersectionRelation::equals_mb : IntersectionRelation::superset_of_pa;
            }
            break;
        case ZetaRegime::mid:
            if (c.conservative) {
                p.union_row = "U3";
                p.union_relation = UnionRelation::equals_mb;
            } else {
                p.union_row = "U4";
                p.union_relation = UnionRelation::between_pa_and_mb;
                p.union_exact = c.children_escape;
            }
            p.intersection_row = c.children_covered ? "I3" : "I4";
            break;
        case ZetaRegime::all:
            if (c.conservative_minus_t) {
                p.union_row = "U5";
                p.union_relation = UnionRelation::equals_ch_sp;
            } else {
                p.union_row = "U6";
                p.union_relation = UnionRelation::subset_of_ch_sp;
            }
            p.intersection_row = c.children_covered ? "I5" : "I6";
            break;
    }
    if (c.zeta_class != ZetaRegime::zero) {
        if (c.children_covered)
            p.intersection_relation = IntersectionRelation::empty;
        else
            p.intersection_relation =
                c.children_untouched ? IntersectionRelation::equals_ch_sp : IntersectionRelation::subset_of_ch_sp;
    }
    return p;
}

VerificationReport verify(const Dag& dag, VarId t, const InterventionFamily& fam) {
    VerificationReport r;
    r.regime = classify_regime(dag, t, fam);
    r.prediction = predict(dag, t, fam);
    r.mbs = oracle_mbs(dag, t, fam);
    for (std::size_t i = 0; i < r.mbs.size(); ++i) {
        r.union_set = sets::set_union(r.union_set, r.mbs[i]);
        r.intersection_set = i == 0 ? r.mbs[i] : sets::set_intersection(r.intersection_set, r.mbs[i]);
    }
    const auto& p = r.prediction;
    const auto& u = r.union_set;
    const auto& x = r.intersection_set;
    switch (p.union_relation) {
        case UnionRelation::equals_mb: r.union_pass = u == p.mb; break;
        case UnionRelation::between_pa_and_mb:
            r.union_pass = sets::is_subset(p.pa, u) && sets::is_subset(u, p.mb) && (!p.union_exact || u == p.mb);
            break;
        case UnionRelation::equals_ch_sp: r.union_pass = u == p.ch_sp; break;
        case UnionRelation::subset_of_ch_sp: r.union_pass = sets::is_subset(u, p.ch_sp); break;
    }
    switch (p.intersection_relation) {
        case IntersectionRelation::equals_pa: r.intersection_pass = x == p.pa; break;
        case IntersectionRelation::equals_mb: r.intersection_pass = x == p.mb; break;
        case IntersectionRelation::superset_of_pa: r.intersection_pass = sets::is_subset(p.pa, x); break;
        case IntersectionRelation::empty: r.intersection_pass = x.empty(); break;
        case IntersectionRelation::equals_ch_sp: r.intersection_pass = x == p.ch_sp; break;
        case IntersectionRelation::subset_of_ch_sp: r.intersection_pass = sets::is_subset(x, p.ch_sp); break;
    }
    return r;
}

namespace {

json names_of(const Dag& dag, const VarSet& s) { return dag.to_names(s); }

}  // namespace

json instance_json(const Dag& dag, VarId t, const InterventionFamily& fam) {
    json edges = json::array();
    for (const auto& [a, b] : dag.edges()) edges.push_back({dag.name(a), dag.name(b)});
    json sets_j = json::array();
    for (const auto& s : fam.sets) sets_j.push_back(names_of(dag, sets::normalized(s)));
    return {{"variables", dag.names()}, {"edges", edges}, {"target", dag.name(t)}, {"interventions", sets_j}};
}

json to_json(const VerificationReport& r, const Dag& dag) {
    const auto& c = r.regime;
    const auto& p = r.prediction;
    json mbs = json::array();
    for (const auto& m : r.mbs) mbs.push_back(names_of(dag, m));
    return {
        {"regime",
         {{"zeta_t", c.zeta_t},
          {"zeta_class", to_string(c.zeta_class)},
          {"conservative", c.conservative},
          {"conservative_minus_t", c.conservative_minus_t},
          {"children_covered", c.children_covered},
          {"children_untouched", c.children_untouched}}},
        {"prediction",
         {{"union_row", p.union_row},
          {"union_relation", to_string(p.union_relation)},
          {"union_exact", p.union_exact},
          {"intersection_row", p.intersection_row},
          {"intersection_relation", to_string(p.intersection_relation)},
          {"mb", names_of(dag, p.mb)},
          {"pa", names_of(dag, p.pa)},
          {"ch_sp", names_of(dag, p.ch_sp)}}},
        {"mbs", mbs},
        {"union", names_of(dag, r.union_set)},
        {"intersection", names_of(dag, r.intersection_set)},
        {"union_pass", r.union_pass},
        {"intersection_pass", r.intersection_pass},
        {"pass", r.pass()},
    };
}

std::size_t FuzzSummary::total_failures() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.failures;
    return n;
}

namespace {

struct RowPlan {
    const char* name;
    bool union_axis;
    ZetaRegime regime;
    bool conservative;  // union rows: requested conservativity
    bool covered;       // intersection rows: requested child coverage
};

constexpr RowPlan kRows[] = {
    {"U1", true, ZetaRegime::zero, true, false},  {"U2", true, ZetaRegime::zero, false, false},
    {"U3", true, ZetaRegime::mid, true, false},   {"U4", true, ZetaRegime::mid, false, false},
    {"U5", true, ZetaRegime::all, true, false},   {"U6", true, ZetaRegime::all, false, false},
    {"I1", false, ZetaRegime::zero, false, true}, {"I2", false, ZetaRegime::zero, false, false},
    {"I3", false, ZetaRegime::mid, false, true},  {"I4", false, ZetaRegime::mid, false, false},
    {"I5", false, ZetaRegime::all, false, true},  {"I6", false, ZetaRegime::all, false, false},
};

// One attempt at drawing an instance of `row`; nullopt when this draw
// cannot realize it.
std::optional<std::pair<VarId, InterventionFamily>> draw_instance(const RowPlan& row, const Dag& dag, Rng& rng) {
    const auto nv = dag.size();
    const auto t = static_cast<VarId>(rng.below(nv));
    const std::size_t n = 2 + rng.below(4);
    FamilyOptions opts;
    opts.regime = row.regime;
    if (row.union_axis) opts.require_conservative = row.conservative;
    else opts.require_children_covered = row.covered;

    InterventionFamily fam;
    try {
        fam = generate_intervention_family(dag, t, n, opts, rng.bits());
    } catch (const ConstraintError&) {
        return std::nullopt;
    }
    const auto& ch = dag.children(t);
    if (row.union_axis && !row.conservative) {
        // Pin one non-target variable into every experiment; half the
        // time prefer a child of t, where the claim has teeth.
        VarId w;
        if (!ch.empty() && rng.uniform() < 0.5) {
            w = ch[rng.below(ch.size())];
        } else {
            if (nv < 2) return std::nullopt;
            do w = static_cast<VarId>(rng.below(nv));
            while (w == t);
        }
        for (auto& s : fam.sets) sets::insert(s, w);
    }
    if (!row.union_axis && !row.covered) {
        if (ch.empty()) return std::nullopt;
        if (rng.uniform() < 0.5) {
            for (auto& s : fam.sets) s = sets::set_difference(s, ch);
        } else {
            const VarId c = ch[rng.below(ch.size())];
            for (auto& s : fam.sets) sets::erase(s, c);
        }
    }
    return std::make_pair(t, std::move(fam));
}

}  // namespace

FuzzSummary fuzz_theorems(std::size_t trials, std::size_t min_nodes, std::size_t max_nodes, double edge_prob,
                          std::uint64_t seed) {
    if (min_nodes < 1 || max_nodes < min_nodes) throw InputError("invalid node range");
    FuzzSummary out;
    for (std::size_t ri = 0; ri < std::size(kRows); ++ri) {
        const auto& row = kRows[ri];
        FuzzRow fr;
        fr.row = row.name;
        for (std::size_t k = 0; k < trials; ++k) {
            Rng rng(derive_seed(derive_seed(seed, ri), k));
            bool drawn = false;
            for (int attempt = 0; attempt < 200 && !drawn; ++attempt) {
                const auto nodes = min_nodes + rng.below(max_nodes - min_nodes + 1);
                const Dag dag = random_dag(nodes, edge_prob, rng.bits());
                auto inst = draw_instance(row, dag, rng);
                if (!inst) continue;
                const auto& [t, fam] = *inst;
                const auto rep = verify(dag, t, fam);
                const auto& actual = row.union_axis ? rep.prediction.union_row : rep.prediction.intersection_row;
                if (actual != row.name) continue;
                drawn = true;
                ++fr.trials;
                const bool ok = row.union_axis ? rep.union_pass : rep.intersection_pass;
                if (!ok) {
                    ++fr.failures;
                    if (!fr.witness) {
                        auto w = instance_json(dag, t, fam);
                        w["report"] = to_json(rep, dag);
                        fr.witness = std::move(w);
                    }
                }
            }
            if (!drawn) ++fr.vacuous;
        }
        out.rows.push_back(std::move(fr));
    }
    return out;
}

json to_json(const FuzzSummary& s) {
    json rows = json::array();
    for (const auto& r : s.rows) {
        json j = {{"row", r.row}, {"trials", r.trials}, {"failures", r.failures}, {"vacuous", r.vacuous}};
        if (r.witness) j["witness"] = *r.witness;
        rows.push_back(std::move(j));
    }
    return {{"rows", rows}, {"total_failures", s.total_failures()}};
}

}  // namespace mimb
