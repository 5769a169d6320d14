#include "mimb/ci.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

namespace mimb {

ContingencyTable count_table(const Dataset& data, VarId x, VarId y, const VarSet& z) {
    const auto& schema = data.schema();
    std::size_t nz = 1;
    for (VarId v : z) nz *= static_cast<std::size_t>(schema.cardinality(v));
    ContingencyTable t(schema.cardinality(x), schema.cardinality(y), nz);

    const auto cx = data.column(x);
    const auto cy = data.column(y);
    std::vector<std::span<const State>> cz;
    std::vector<std::size_t> radix;
    for (VarId v : z) {
        cz.push_back(data.column(v));
        radix.push_back(static_cast<std::size_t>(schema.cardinality(v)));
    }
    for (std::size_t r = 0; r < data.rows(); ++r) {
        std::size_t key = 0;
        for (std::size_t k = 0; k < cz.size(); ++k) key = key * radix[k] + static_cast<std::size_t>(cz[k][r]);
        ++t.at(key, cx[r], cy[r]);
    }
    return t;
}

G2 g2_statistic(const ContingencyTable& t) {
    G2 out;
    std::vector<double> mx(static_cast<std::size_t>(t.rx));
    std::vector<double> my(static_cast<std::size_t>(t.ry));
    for (std::size_t z = 0; z < t.nz; ++z) {
        std::fill(mx.begin(), mx.end(), 0.0);
        std::fill(my.begin(), my.end(), 0.0);
        double total = 0.0;
        for (int i = 0; i < t.rx; ++i)
            for (int j = 0; j < t.ry; ++j) {
                const double o = t.at(z, i, j);
                mx[static_cast<std::size_t>(i)] += o;
                my[static_cast<std::size_t>(j)] += o;
                total += o;
            }
        if (total == 0.0) continue;
        double stratum = 0.0;
        for (int i = 0; i < t.rx; ++i)
            for (int j = 0; j < t.ry; ++j) {
                const double o = t.at(z, i, j);
                if (o == 0.0) continue;
                const double e = mx[static_cast<std::size_t>(i)] * my[static_cast<std::size_t>(j)] / total;
                stratum += o * std::log(o / e);
            }
        out.statistic += 2.0 * stratum;
        const auto live_x = static_cast<std::size_t>(std::count_if(mx.begin(), mx.end(), [](double v) { return v > 0; }));
        const auto live_y = static_cast<std::size_t>(std::count_if(my.begin(), my.end(), [](double v) { return v > 0; }));
        out.dof += (live_x - 1) * (live_y - 1);
    }
    // Rounding can leave a tiny negative sum on independent tables.
    if (out.statistic < 0.0) out.statistic = 0.0;
    return out;
}

double chi_square_upper_tail(double statistic, std::size_t dof) {
    if (dof == 0 || statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

CiResult g2_test(const Dataset& data, const CiQuery& q, double alpha, const G2Options& opts) {
    const auto& schema = data.schema();
    double cells = static_cast<double>(schema.cardinality(q.x)) * schema.cardinality(q.y);
    for (VarId v : q.z) cells *= schema.cardinality(v);
    CiResult r;
    const bool enough_rows = static_cast<double>(data.rows()) >= opts.min_rows_per_cell * cells;
    if (!enough_rows && cells > static_cast<double>(1u << 22)) {
        // Too sparse to be reliable and too large to count densely.
        return r;
    }
    const auto g = g2_statistic(count_table(data, q.x, q.y, q.z));
    r.statistic = g.statistic;
    r.dof = g.dof;
    r.p_value = chi_square_upper_tail(g.statistic, g.dof);
    r.reliable = enough_rows && g.dof > 0;
    r.independent = r.reliable && r.p_value > alpha;
    return r;
}

TestLedger::TestLedger(std::size_t n_datasets)
    : n_(n_datasets), counts_(std::make_unique<std::atomic<std::uint64_t>[]>(n_datasets)) {
    for (std::size_t i = 0; i < n_; ++i) counts_[i].store(0);
}

void TestLedger::record(std::size_t dataset) {
    counts_[dataset].fetch_add(1, std::memory_order_relaxed);
}

std::uint64_t TestLedger::count(std::size_t dataset) const {
    if (dataset >= n_) throw InputError("dataset index out of range");
    return counts_[dataset].load(std::memory_order_relaxed);
}

std::uint64_t TestLedger::total() const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += counts_[i].load(std::memory_order_relaxed);
    return s;
}

std::vector<std::uint64_t> TestLedger::snapshot() const {
    std::vector<std::uint64_t> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = counts_[i].load(std::memory_order_relaxed);
    return out;
}

CiResult CiBackend::test(const CiQuery& q, double alpha) {
    const auto n = static_cast<VarId>(variables());
    if (q.dataset >= datasets()) throw InputError("dataset index out of range");
    if (q.x < 0 || q.x >= n || q.y < 0 || q.y >= n) throw InputError("query variable out of range");
    if (q.x == q.y) throw InputError("query needs two distinct variables");
    for (VarId v : q.z) {
        if (v < 0 || v >= n) throw InputError("conditioning variable out of range");
        if (v == q.x || v == q.y) throw InputError("conditioning set contains a query endpoint");
    }
    ledger_->record(q.dataset);
    return run(q, alpha);
}

DataBackend::DataBackend(const DatasetBundle& bundle, G2Options opts)
    : CiBackend(bundle.size()), bundle_(&bundle), opts_(opts) {}

CiResult DataBackend::run(const CiQuery& q, double alpha) const {
    return g2_test((*bundle_)[q.dataset], q, alpha, opts_);
}

namespace {

std::vector<Dag> post_dags(const Dag& dag, const InterventionFamily& fam) {
    fam.validate(dag);
    std::vector<Dag> out;
    for (const auto& s : fam.sets) out.push_back(dag.intervene(s));
    return out;
}

}  // namespace

OracleBackend::OracleBackend(const Dag& dag, const InterventionFamily& fam) : OracleBackend(post_dags(dag, fam)) {}

OracleBackend::OracleBackend(std::vector<Dag> post_dags_)
    : CiBackend(post_dags_.size()), dags_(std::move(post_dags_)) {
    if (dags_.empty()) throw InputError("oracle backend needs at least one graph");
    for (const auto& d : dags_)
        if (d.names() != dags_.front().names()) throw InputError("oracle graphs must share variables");
}

CiResult OracleBackend::run(const CiQuery& q, double) const {
    CiResult r;
    r.reliable = true;
    r.independent = is_d_separated(dags_[q.dataset], q.x, q.y, sets::normalized(q.z));
    r.p_value = r.independent ? 1.0 : 0.0;
    return r;
}

}  // namespace mimb
