#include "mimb/simulate.hpp"

#include <numeric>

#include <fmt/format.h>

#include "mimb/random.hpp"

namespace mimb {

Dataset forward_sample(const BayesianNetwork& bn, std::size_t n_rows, std::uint64_t seed) {
    if (n_rows < 1) throw InputError("forward_sample needs at least one row");
    const auto n = bn.size();
    Rng rng(seed);
    std::vector<std::vector<State>> cols(n, std::vector<State>(n_rows));
    std::vector<State> cur(n, 0);
    const auto& order = bn.dag().topological_order();
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (VarId v : order) {
            const auto row = bn.row(v, bn.row_index<State>(v, cur));
            cur[v] = static_cast<State>(rng.categorical(row));
            cols[v][r] = cur[v];
        }
    }
    return Dataset(Schema::of(bn), std::move(cols));
}

BayesianNetwork randomize_manipulated_cpts(const BayesianNetwork& bn, const VarSet& targets, double dirichlet_alpha,
                                           std::uint64_t seed) {
    if (!(dirichlet_alpha > 0.0)) throw InputError("dirichlet alpha must be positive");
    const VarSet cut = sets::normalized(targets);
    for (VarId v : cut) bn.dag().check_var(v);
    Rng rng(seed);
    std::vector<std::vector<VarId>> parents;
    std::vector<std::vector<double>> cpts;
    for (std::size_t v = 0; v < bn.size(); ++v) {
        const auto id = static_cast<VarId>(v);
        if (sets::contains(cut, id)) {
            parents.emplace_back();
            cpts.push_back(rng.dirichlet(static_cast<std::size_t>(bn.cardinality(id)), dirichlet_alpha));
        } else {
            parents.push_back(bn.cpt_parents(id));
            cpts.push_back(bn.cpt(id));
        }
    }
    return BayesianNetwork(bn.dag().intervene(cut), bn.all_states(), std::move(parents), std::move(cpts));
}

namespace {

bool family_ok(const Dag& dag, VarId t, const InterventionFamily& fam, const FamilyOptions& opts) {
    if (opts.require_conservative) {
        const bool ok = opts.regime == ZetaRegime::all ? is_conservative_excluding(fam, t) : is_conservative(fam);
        if (!ok) return false;
    }
    if (opts.require_children_covered && !sets::is_subset(dag.children(t), fam.manipulated())) return false;
    return true;
}

}  // namespace

InterventionFamily generate_intervention_family(const Dag& dag, VarId t, std::size_t n_datasets,
                                                const FamilyOptions& opts, std::uint64_t seed) {
    dag.check_var(t);
    const auto n = n_datasets;
    if (n < 1) throw ConstraintError("an intervention family needs at least one experiment");
    if (opts.regime == ZetaRegime::mid && n < 2)
        throw ConstraintError("0 < zeta_T < n needs at least two experiments");

    std::vector<VarId> pool;
    for (std::size_t v = 0; v < dag.size(); ++v)
        if (static_cast<VarId>(v) != t) pool.push_back(static_cast<VarId>(v));
    std::size_t max_k = opts.max_targets_per_set ? opts.max_targets_per_set : (dag.size() + 4) / 5;
    max_k = std::min(std::max<std::size_t>(max_k, 1), pool.size());

    if (opts.require_conservative && n == 1 && max_k > 0)
        throw ConstraintError("a conservative family with manipulated variables needs at least two experiments");

    Rng rng(seed);
    auto draw = [&] {
        InterventionFamily fam;
        fam.sets.resize(n);
        for (auto& s : fam.sets) {
            const std::size_t k = max_k ? 1 + rng.below(max_k) : 0;
            std::vector<VarId> p = pool;
            for (std::size_t i = 0; i < k; ++i) std::swap(p[i], p[i + rng.below(p.size() - i)]);
            s.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
        }
        std::vector<std::size_t> with_t;
        if (opts.regime == ZetaRegime::all) {
            with_t.resize(n);
            std::iota(with_t.begin(), with_t.end(), 0);
        } else if (opts.regime == ZetaRegime::mid) {
            const std::size_t zeta = 1 + rng.below(n - 1);
            std::vector<std::size_t> idx(n);
            std::iota(idx.begin(), idx.end(), 0);
            for (std::size_t i = 0; i < zeta; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
            with_t.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(zeta));
        }
        for (auto i : with_t) fam.sets[i].push_back(t);
        for (auto& s : fam.sets) s = sets::normalized(std::move(s));
        return fam;
    };

    InterventionFamily fam;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        fam = draw();
        if (family_ok(dag, t, fam, opts)) return fam;
    }

    // Constructive repair of the last draw.
    if (opts.require_children_covered)
        for (VarId c : dag.children(t))
            if (fam.zeta(c) == 0) sets::insert(fam.sets[rng.below(n)], c);
    if (opts.require_conservative)
        for (VarId v : fam.manipulated())
            if (v != t && fam.zeta(v) == n) sets::erase(fam.sets[rng.below(n)], v);
    if (!family_ok(dag, t, fam, opts))
        throw ConstraintError("cannot satisfy the requested intervention constraints");
    return fam;
}

DatasetBundle generate_bundle(const BayesianNetwork& bn, const InterventionFamily& fam, std::size_t rows_per_dataset,
                              double dirichlet_alpha, std::uint64_t seed) {
    fam.validate(bn.dag());
    std::vector<Dataset> out;
    out.reserve(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto sub = derive_seed(seed, i);
        const auto targets = sets::normalized(fam.sets[i]);
        const auto post = randomize_manipulated_cpts(bn, targets, dirichlet_alpha, derive_seed(sub, 0));
        auto data = forward_sample(post, rows_per_dataset, derive_seed(sub, 1));
        data.set_provenance(targets);
        out.push_back(std::move(data));
    }
    return DatasetBundle(std::move(out));
}

Dag random_dag(std::size_t n_nodes, double edge_prob, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<VarId> perm(n_nodes);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i + 1 < n_nodes; ++i) std::swap(perm[i], perm[i + rng.below(n_nodes - i)]);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n_nodes; ++i)
        for (std::size_t j = i + 1; j < n_nodes; ++j)
            if (rng.uniform() < edge_prob) edges.emplace_back(perm[i], perm[j]);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n_nodes; ++v) names.push_back(fmt::format("X{}", v));
    return Dag(std::move(names), edges);
}

BayesianNetwork random_cpts(const Dag& dag, int cardinality, double dirichlet_alpha, std::uint64_t seed) {
    if (cardinality < 2) throw InputError("cardinality must be at least 2");
    if (!(dirichlet_alpha > 0.0)) throw InputError("dirichlet alpha must be positive");
    Rng rng(seed);
    std::vector<std::string> labels;
    for (int s = 0; s < cardinality; ++s) labels.push_back(fmt::format("s{}", s));
    const auto k = static_cast<std::size_t>(cardinality);
    std::vector<std::vector<std::string>> states(dag.size(), labels);
    std::vector<std::vector<VarId>> parents;
    std::vector<std::vector<double>> cpts;
    for (std::size_t v = 0; v < dag.size(); ++v) {
        const auto& pa = dag.parents(static_cast<VarId>(v));
        parents.push_back(pa);
        std::size_t rows = 1;
        for (std::size_t i = 0; i < pa.size(); ++i) rows *= k;
        std::vector<double> table;
        table.reserve(rows * k);
        for (std::size_t r = 0; r < rows; ++r)
            for (double p : rng.dirichlet(k, dirichlet_alpha)) table.push_back(p);
        cpts.push_back(std::move(table));
    }
    return BayesianNetwork(dag, std::move(states), std::move(parents), std::move(cpts));
}

}  // namespace mimb
