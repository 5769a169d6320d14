#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "mimb/benchmark.hpp"
#include "mimb/ci.hpp"
#include "mimb/dataset.hpp"
#include "mimb/hiton.hpp"
#include "mimb/metrics.hpp"
#include "mimb/mimb.hpp"
#include "mimb/network.hpp"
#include "mimb/random.hpp"
#include "mimb/report.hpp"
#include "mimb/simulate.hpp"
#include "mimb/theorem.hpp"

using namespace mimb;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    const fs::path p(out);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw InputError("cannot write " + out);
    f << j.dump(2) << "\n";
}

ZetaRegime parse_regime(const std::string& s) {
    if (s == "zeta0" || s == "zero") return ZetaRegime::zero;
    if (s == "mid") return ZetaRegime::mid;
    if (s == "all") return ZetaRegime::all;
    throw InputError("unknown regime '" + s + "' (zeta0, mid, all)");
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
    const auto colon = spec.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size())
        throw InputError("expected VAR:VALUE, got '" + spec + "'");
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

double to_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("not a number: '" + s + "'");
}

struct GenerateArgs {
    std::string network, target, regime = "zeta0", out;
    std::size_t n_datasets = 5, samples = 5000, max_targets = 0;
    bool conservative = false, cover_children = false;
    double alpha_dirichlet = 1.0;
    std::uint64_t seed = 1;
};

int run_generate(const GenerateArgs& a) {
    const auto bn = load_network(a.network);
    const auto t = bn.dag().index_of(a.target);
    FamilyOptions fo;
    fo.regime = parse_regime(a.regime);
    fo.require_conservative = a.conservative;
    fo.require_children_covered = a.cover_children;
    fo.max_targets_per_set = a.max_targets;
    if (a.samples == 0) throw InputError("--samples must be positive");
    const auto fam = generate_intervention_family(bn.dag(), t, a.n_datasets, fo, derive_seed(a.seed, 0));
    const auto bundle = generate_bundle(bn, fam, a.samples, a.alpha_dirichlet, derive_seed(a.seed, 1));

    fs::create_directories(a.out);
    Manifest m;
    m.schema = bundle.schema();
    m.target = a.target;
    m.network = fs::absolute(a.network).string();
    std::vector<std::vector<std::string>> iv;
    for (std::size_t i = 0; i < bundle.size(); ++i) {
        const auto path = (fs::path(a.out) / fmt::format("d{}.csv", i)).string();
        write_csv(path, bundle[i]);
        m.datasets.push_back(path);
        iv.push_back(bn.dag().to_names(fam.sets[i]));
    }
    m.interventions = iv;
    const auto manifest = (fs::path(a.out) / "manifest.json").string();
    save_manifest(manifest, m);
    emit({{"manifest", manifest}, {"interventions", iv}, {"zeta_t", fam.zeta(t)}}, "");
    return 0;
}

struct DiscoverArgs {
    std::string manifest, target, algo = "mimb", backend = "data", out;
    double alpha = 0.01;
    std::size_t max_cond = 3;
    bool symmetry = false, ranked = false;
};

int run_discover(const DiscoverArgs& a) {
    const auto m = load_manifest(a.manifest);
    const std::string target = !a.target.empty() ? a.target : m.target.value_or("");
    if (target.empty()) throw InputError("no target: pass --target or set it in the manifest");
    const auto& names = m.schema.names;
    const auto t = m.schema.index_of(target);

    std::optional<BayesianNetwork> bn;
    if (m.network) {
        bn = load_network(*m.network);
        if (bn->dag().names() != names) throw InputError("manifest variables differ from the network's");
    }

    DatasetBundle bundle;
    std::unique_ptr<CiBackend> backend;
    if (a.backend == "data") {
        bundle = load_bundle(m);
        backend = std::make_unique<DataBackend>(bundle);
    } else if (a.backend == "oracle") {
        if (!bn || !m.interventions) throw InputError("the oracle backend needs a network and interventions");
        InterventionFamily fam;
        for (const auto& s : *m.interventions) fam.sets.push_back(bn->dag().to_set(s));
        backend = std::make_unique<OracleBackend>(bn->dag(), fam);
    } else {
        throw InputError("unknown backend '" + a.backend + "' (data, oracle)");
    }

    json report;
    VarSet found_mb, found_pa;
    if (a.algo == "mimb") {
        MimbOptions o{a.alpha, a.max_cond, a.symmetry, a.ranked};
        const auto r = mimb::mimb(*backend, t, o);
        report = to_json(r, names);
        found_mb = r.mb;
        found_pa = r.pa;
    } else if (a.algo == "baseline") {
        HitonOptions o{a.alpha, a.max_cond, a.symmetry};
        const auto r = baseline(*backend, t, o);
        report = to_json(r, names);
        found_mb = r.mb;
        found_pa = r.pa;
    } else {
        throw InputError("unknown algorithm '" + a.algo + "' (mimb, baseline)");
    }
    report["algorithm"] = a.algo;
    report["backend"] = a.backend;
    report["target"] = target;
    report["alpha"] = a.alpha;
    report["max_cond"] = a.max_cond;
    report["symmetry_correction"] = a.symmetry;
    if (report["n_test"] != backend->ledger().total()) throw InvariantError("reported test count differs from ledger");
    if (bn) {
        const auto& d = bn->dag();
        const auto mb = d.markov_blanket(t), pa = d.parents(t);
        auto cell = [](const Score& s) { return json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}}; };
        report["truth"] = {{"mb", name_list(names, mb)}, {"pa", name_list(names, pa)}};
        report["score"] = {{"mb", cell(score(found_mb, mb))}, {"pa", cell(score(found_pa, pa))}};
    }
    emit(report, a.out);
    return 0;
}

struct TheoremArgs {
    std::size_t trials = 1000;
    std::string nodes = "6-10";
    double edge_prob = 0.3;
    std::uint64_t seed = 1;
    std::string out;
};

int run_verify(const TheoremArgs& a) {
    std::size_t lo = 0, hi = 0;
    const auto dash = a.nodes.find('-');
    try {
        lo = std::stoul(a.nodes.substr(0, dash));
        hi = dash == std::string::npos ? lo : std::stoul(a.nodes.substr(dash + 1));
    } catch (const std::exception&) {
        throw InputError("--nodes expects N or LO-HI, got '" + a.nodes + "'");
    }
    const auto s = fuzz_theorems(a.trials, lo, hi, a.edge_prob, a.seed);
    emit(to_json(s), a.out);
    for (const auto& r : s.rows)
        std::cerr << fmt::format("{:<3} trials {:>5}  failures {:>5}  vacuous {:>5}\n", r.row, r.trials, r.failures,
                                 r.vacuous);
    return 0;
}

struct BenchmarkArgs {
    std::string network, target, protocol = "table3", out;
    BenchmarkConfig cfg;
};

int run_bench(BenchmarkArgs a) {
    const auto bn = load_network(a.network);
    const auto t = bn.dag().index_of(a.target);
    if (a.protocol == "parents") a.cfg.cover_children = true;
    else if (a.protocol != "table3") throw InputError("unknown protocol '" + a.protocol + "' (table3, parents)");
    const auto r = run_benchmark(bn, t, a.cfg);
    auto j = to_json(r, bn, t, a.cfg);
    j["protocol"] = a.protocol;
    emit(j, a.out);
    for (const auto* s : {&r.mimb, &r.baseline})
        std::cerr << fmt::format("{:<8}  P {}  R {}  F1 {}  pa-F1 {}  nTest {}\n", s == &r.mimb ? "MIMB" : "Baseline",
                                 format_mean_sd(s->precision), format_mean_sd(s->recall), format_mean_sd(s->f1),
                                 format_mean_sd(s->pa_f1), format_mean_sd(s->n_test, 0));
    return 0;
}

struct SplitArgs {
    std::string data, by, label, target, out;
    std::optional<double> threshold;
    std::vector<std::string> discretize, binarize, drop;
};

int run_split(const SplitArgs& a) {
    if (a.threshold.has_value() == !a.label.empty()) throw InputError("give exactly one of --threshold and --label");
    const auto raw = read_csv(a.data);
    SplitRule rule = a.threshold ? SplitRule{ThresholdRule{*a.threshold}} : SplitRule{LabelRule{a.label}};
    const auto [first, second] = split_rows(raw, raw.schema().index_of(a.by), rule);

    auto data = raw;
    for (const auto& spec : a.discretize) {
        const auto [var, bins] = split_spec(spec);
        const double b = to_double(bins);
        if (b < 1 || b != static_cast<double>(static_cast<std::size_t>(b))) throw InputError("bad bin count in " + spec);
        data = discretize(data, data.schema().index_of(var), static_cast<std::size_t>(b));
    }
    for (const auto& spec : a.binarize) {
        const auto [var, thr] = split_spec(spec);
        data = binarize(data, data.schema().index_of(var), to_double(thr));
    }
    for (const auto& var : a.drop) data = drop_column(data, data.schema().index_of(var));
    if (!a.target.empty()) data.schema().index_of(a.target);

    fs::create_directories(a.out);
    Manifest m;
    m.schema = data.schema();
    if (!a.target.empty()) m.target = a.target;
    json parts = json::array();
    for (const auto* rows : {&first, &second}) {
        const auto path = (fs::path(a.out) / fmt::format("part{}.csv", m.datasets.size())).string();
        write_csv(path, data.select_rows(*rows));
        m.datasets.push_back(path);
        parts.push_back({{"file", path}, {"rows", rows->size()}});
    }
    const auto manifest = (fs::path(a.out) / "manifest.json").string();
    save_manifest(manifest, m);
    emit({{"manifest", manifest}, {"partitions", parts}}, "");
    return 0;
}

// Writes the seven-variable worked example as a network plus a small
// generated bundle so `discover` can be pointed at it.
int run_fixture(const std::string& out, std::size_t samples, std::uint64_t seed) {
    const auto [dag, fam] = reconstruct_trace_dag();
    const auto bn = random_cpts(dag, 2, 1.0, seed);
    fs::create_directories(out);
    const auto net = (fs::path(out) / "trace.net").string();
    {
        std::ofstream f(net);
        f << format_network(bn);
    }
    const auto bundle = generate_bundle(bn, fam, samples, 1.0, derive_seed(seed, 1));
    Manifest m;
    m.schema = bundle.schema();
    m.target = "T";
    m.network = fs::absolute(net).string();
    std::vector<std::vector<std::string>> iv;
    for (std::size_t i = 0; i < bundle.size(); ++i) {
        const auto path = (fs::path(out) / fmt::format("d{}.csv", i)).string();
        write_csv(path, bundle[i]);
        m.datasets.push_back(path);
        iv.push_back(dag.to_names(fam.sets[i]));
    }
    m.interventions = iv;
    const auto manifest = (fs::path(out) / "manifest.json").string();
    save_manifest(manifest, m);
    emit({{"manifest", manifest}, {"network", net}}, "");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov blanket discovery from multiple interventional datasets"};
    app.require_subcommand(1);

    GenerateArgs g;
    auto* gen = app.add_subcommand("generate", "Simulate an interventional bundle from a network");
    gen->add_option("--network", g.network, "Network file (.net)")->required();
    gen->add_option("--target", g.target, "Target variable")->required();
    gen->add_option("--n-datasets", g.n_datasets, "Number of experiments");
    gen->add_option("--samples", g.samples, "Rows per dataset");
    gen->add_option("--regime", g.regime, "zeta0, mid or all");
    gen->add_flag("--conservative", g.conservative, "Every variable escapes manipulation somewhere");
    gen->add_flag("--cover-children", g.cover_children, "Every child of the target is manipulated somewhere");
    gen->add_option("--max-targets", g.max_targets, "Manipulated variables per experiment (0: |V|/5)");
    gen->add_option("--alpha-dirichlet", g.alpha_dirichlet, "Dirichlet parameter for manipulated tables");
    gen->add_option("--seed", g.seed);
    gen->add_option("--out", g.out, "Output directory")->required();

    DiscoverArgs d;
    auto* disc = app.add_subcommand("discover", "Find the Markov blanket and parents of a target");
    disc->add_option("--manifest", d.manifest)->required();
    disc->add_option("--target", d.target, "Defaults to the manifest's target");
    disc->add_option("--algo", d.algo, "mimb or baseline");
    disc->add_option("--backend", d.backend, "data (G2 tests) or oracle (d-separation on the manifest's network)");
    disc->add_option("--alpha", d.alpha);
    disc->add_option("--max-cond", d.max_cond, "Largest conditioning set");
    disc->add_flag("--symmetry", d.symmetry, "Apply the symmetry correction");
    disc->add_flag("--ranked", d.ranked, "Admit candidates by marginal p-value");
    disc->add_option("--out", d.out, "Report path (stdout when omitted)");

    TheoremArgs th;
    auto* ver = app.add_subcommand("verify-theorems", "Fuzz the union/intersection relations with a graph oracle");
    ver->add_option("--trials", th.trials, "Instances per row");
    ver->add_option("--nodes", th.nodes, "N or LO-HI");
    ver->add_option("--edge-prob", th.edge_prob);
    ver->add_option("--seed", th.seed);
    ver->add_option("--out", th.out);

    BenchmarkArgs b;
    auto* bench = app.add_subcommand("benchmark", "Repeated synthetic comparison of MIMB and the baseline");
    bench->add_option("--network", b.network)->required();
    bench->add_option("--target", b.target)->required();
    bench->add_option("--protocol", b.protocol, "table3 or parents (children covered)");
    bench->add_option("--reps", b.cfg.reps);
    bench->add_option("--seed", b.cfg.seed);
    bench->add_option("--alpha", b.cfg.alpha);
    bench->add_option("--samples", b.cfg.samples);
    bench->add_option("--n-datasets", b.cfg.n_datasets);
    bench->add_option("--max-cond", b.cfg.max_cond);
    bench->add_flag("--symmetry", b.cfg.symmetry_correction);
    bench->add_option("--out", b.out);

    SplitArgs s;
    double threshold = 0.0;
    auto* split = app.add_subcommand("split", "Split one CSV into two experiments");
    split->add_option("--data", s.data)->required();
    split->add_option("--by", s.by, "Column defining the partition")->required();
    auto* thr = split->add_option("--threshold", threshold, "Rows below the threshold go first");
    auto* lab = split->add_option("--label", s.label, "Rows with this label go first");
    thr->excludes(lab);
    split->add_option("--discretize", s.discretize, "VAR:BINS, equal-frequency");
    split->add_option("--binarize", s.binarize, "VAR:THRESHOLD");
    split->add_option("--drop", s.drop, "Column to remove");
    split->add_option("--target", s.target, "Target recorded in the manifest");
    split->add_option("--out", s.out)->required();

    std::string fixture_out;
    std::size_t fixture_samples = 2000;
    std::uint64_t fixture_seed = 1;
    auto* fix = app.add_subcommand("fixture", "Write the seven-variable worked example");
    fix->add_option("--out", fixture_out)->required();
    fix->add_option("--samples", fixture_samples);
    fix->add_option("--seed", fixture_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) return run_generate(g);
        if (*disc) return run_discover(d);
        if (*ver) return run_verify(th);
        if (*bench) return run_bench(b);
        if (*split) {
            if (thr->count() > 0) s.threshold = threshold;
            return run_split(s);
        }
        if (*fix) return run_fixture(fixture_out, fixture_samples, fixture_seed);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConstraintError& e) {
        std::cerr << "unsatisfiable: " << e.what() << "\n";
        return 3;
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
