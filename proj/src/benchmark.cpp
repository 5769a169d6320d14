#include "mimb/benchmark.hpp"

#include "mimb/hiton.hpp"
#include "mimb/mimb.hpp"
#include "mimb/random.hpp"
#include "mimb/report.hpp"
#include "mimb/theorem.hpp"

using nlohmann::json;

namespace mimb {

namespace {

void summarize(AlgoSummary& s) {
    std::vector<double> p, r, f, pp, pr, pf, nt;
    for (const auto& run : s.runs) {
        p.push_back(run.mb.precision);
        r.push_back(run.mb.recall);
        f.push_back(run.mb.f1);
        pp.push_back(run.pa.precision);
        pr.push_back(run.pa.recall);
        pf.push_back(run.pa.f1);
        nt.push_back(static_cast<double>(run.n_test));
    }
    s.precision = mean_sd(p);
    s.recall = mean_sd(r);
    s.f1 = mean_sd(f);
    s.pa_precision = mean_sd(pp);
    s.pa_recall = mean_sd(pr);
    s.pa_f1 = mean_sd(pf);
    s.n_test = mean_sd(nt);
}

json summary_json(const AlgoSummary& s, const std::vector<std::string>& names) {
    json runs = json::array();
    for (const auto& r : s.runs)
        runs.push_back({{"mb", name_list(names, r.found_mb)},
                        {"pa", name_list(names, r.found_pa)},
                        {"precision", r.mb.precision},
                        {"recall", r.mb.recall},
                        {"f1", r.mb.f1},
                        {"pa_f1", r.pa.f1},
                        {"n_test", r.n_test}});
    auto cell = [](const MeanSd& m) { return json{{"mean", m.mean}, {"sd", m.sd}, {"text", format_mean_sd(m)}}; };
    auto count = [](const MeanSd& m) {
        return json{{"mean", m.mean}, {"sd", m.sd}, {"text", format_mean_sd(m, 0)}};
    };
    return {{"precision", cell(s.precision)},   {"recall", cell(s.recall)},       {"f1", cell(s.f1)},
            {"pa_precision", cell(s.pa_precision)}, {"pa_recall", cell(s.pa_recall)}, {"pa_f1", cell(s.pa_f1)},
            {"n_test", count(s.n_test)},         {"runs", runs}};
}

}  // namespace

BenchmarkResult run_benchmark(const BayesianNetwork& bn, VarId t, const BenchmarkConfig& cfg) {
    const auto& dag = bn.dag();
    dag.check_var(t);
    const VarSet truth_mb = dag.markov_blanket(t);
    const VarSet truth_pa = dag.parents(t);
    FamilyOptions fo;
    fo.regime = cfg.regime;
    fo.require_conservative = cfg.conservative;
    fo.require_children_covered = cfg.cover_children;

    BenchmarkResult out;
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
        auto fam = generate_intervention_family(dag, t, cfg.n_datasets, fo, derive_seed(cfg.seed, 2 * rep));
        const auto bundle = generate_bundle(bn, fam, cfg.samples, cfg.dirichlet_alpha, derive_seed(cfg.seed, 2 * rep + 1));
        {
            DataBackend backend(bundle);
            const auto r = mimb(backend, t, MimbOptions{cfg.alpha, cfg.max_cond, cfg.symmetry_correction, false});
            out.mimb.runs.push_back({score(r.mb, truth_mb), score(r.pa, truth_pa), r.n_test, r.mb, r.pa});
        }
        {
            DataBackend backend(bundle);
            const auto r = baseline(backend, t, HitonOptions{cfg.alpha, cfg.max_cond, false});
            out.baseline.runs.push_back({score(r.mb, truth_mb), score(r.pa, truth_pa), r.n_test, r.mb, r.pa});
        }
        out.families.push_back(std::move(fam));
    }
    summarize(out.mimb);
    summarize(out.baseline);
    return out;
}

json to_json(const BenchmarkResult& r, const BayesianNetwork& bn, VarId t, const BenchmarkConfig& cfg) {
    const auto& names = bn.dag().names();
    json fams = json::array();
    for (const auto& f : r.families) {
        json sets_j = json::array();
        for (const auto& s : f.sets) sets_j.push_back(name_list(names, s));
        fams.push_back(sets_j);
    }
    return {{"target", names.at(static_cast<std::size_t>(t))},
            {"truth_mb", name_list(names, bn.dag().markov_blanket(t))},
            {"truth_pa", name_list(names, bn.dag().parents(t))},
            {"config",
             {{"n_datasets", cfg.n_datasets},
              {"samples", cfg.samples},
              {"reps", cfg.reps},
              {"alpha", cfg.alpha},
              {"dirichlet_alpha", cfg.dirichlet_alpha},
              {"max_cond", cfg.max_cond},
              {"regime", to_string(cfg.regime)},
              {"conservative", cfg.conservative},
              {"cover_children", cfg.cover_children},
              {"symmetry_correction", cfg.symmetry_correction},
              {"seed", cfg.seed}}},
            {"mimb", summary_json(r.mimb, names)},
            {"baseline", summary_json(r.baseline, names)},
            {"interventions", fams}};
}

}  // namespace mimb
