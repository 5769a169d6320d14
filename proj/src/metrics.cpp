#include "mimb/metrics.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace mimb {

Score score(const VarSet& found, const VarSet& truth) {
    const auto f = sets::normalized(found);
    const auto t = sets::normalized(truth);
    const double hit = static_cast<double>(sets::set_intersection(f, t).size());
    Score s;
    s.precision = f.empty() ? (t.empty() ? 1.0 : 0.0) : hit / static_cast<double>(f.size());
    s.recall = t.empty() ? 1.0 : hit / static_cast<double>(t.size());
    s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    return s;
}

MeanSd mean_sd(const std::vector<double>& xs) {
    MeanSd m;
    if (xs.empty()) return m;
    m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() < 2) return m;
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return m;
}

std::string format_mean_sd(const MeanSd& m, int decimals) {
    return fmt::format("{:.{}f}±{:.{}f}", m.mean, decimals, m.sd, decimals);
}

namespace {

double numeric_label(const std::string& s, const std::string& column) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InputError("column '" + column + "' has non-numeric value '" + s + "'");
    return v;
}

std::vector<double> numeric_column(const Dataset& data, VarId v) {
    const auto& schema = data.schema();
    const auto& labels = schema.states.at(static_cast<std::size_t>(v));
    const auto& name = schema.names[static_cast<std::size_t>(v)];
    std::vector<double> value_of(labels.size());
    for (std::size_t s = 0; s < labels.size(); ++s) value_of[s] = numeric_label(labels[s], name);
    std::vector<double> out;
    out.reserve(data.rows());
    for (State s : data.column(v)) out.push_back(value_of[static_cast<std::size_t>(s)]);
    return out;
}

Dataset replace_column(const Dataset& data, VarId v, std::vector<std::string> states, std::vector<State> column) {
    Schema schema = data.schema();
    schema.states[static_cast<std::size_t>(v)] = std::move(states);
    std::vector<std::vector<State>> cols;
    for (std::size_t c = 0; c < schema.size(); ++c) {
        if (static_cast<VarId>(c) == v)
            cols.push_back(std::move(column));
        else
            cols.emplace_back(data.column(static_cast<VarId>(c)).begin(), data.column(static_cast<VarId>(c)).end());
    }
    return Dataset(std::move(schema), std::move(cols), data.provenance());
}

}  // namespace

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_rows(const Dataset& data, VarId by,
                                                                          const SplitRule& rule) {
    const auto& schema = data.schema();
    if (by < 0 || static_cast<std::size_t>(by) >= schema.size()) throw InputError("split variable out of range");
    std::vector<char> first(data.rows(), 0);
    if (const auto* th = std::get_if<ThresholdRule>(&rule)) {
        const auto values = numeric_column(data, by);
        for (std::size_t r = 0; r < values.size(); ++r) first[r] = values[r] < th->threshold;
    } else {
        const auto& label = std::get<LabelRule>(rule).label;
        const auto& states = schema.states[static_cast<std::size_t>(by)];
        auto it = std::find(states.begin(), states.end(), label);
        if (it != states.end()) {
            const auto s = static_cast<State>(it - states.begin());
            const auto col = data.column(by);
            for (std::size_t r = 0; r < col.size(); ++r) first[r] = col[r] == s;
        }
    }
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
    for (std::size_t r = 0; r < first.size(); ++r) (first[r] ? out.first : out.second).push_back(r);
    if (out.first.empty() || out.second.empty())
        throw InputError("split on '" + schema.names[static_cast<std::size_t>(by)] + "' leaves a partition empty");
    return out;
}

DatasetBundle split_dataset(const Dataset& data, VarId by, const SplitRule& rule) {
    const auto [a, b] = split_rows(data, by, rule);
    std::vector<Dataset> parts;
    parts.push_back(data.select_rows(a));
    parts.push_back(data.select_rows(b));
    return DatasetBundle(std::move(parts));
}

Dataset discretize(const Dataset& data, VarId v, std::size_t bins) {
    if (bins < 1) throw InputError("need at least one bin");
    const auto values = numeric_column(data, v);
    const auto n = values.size();
    if (n == 0) throw InputError("cannot discretize an empty column");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    // Upper edge of bin b is the value at the last rank it would hold
    // under an exact equal split.
    std::vector<double> edges;
    for (std::size_t b = 1; b < bins; ++b) {
        const std::size_t rank = (b * n + bins - 1) / bins;  // ceil(b n / bins)
        const double e = sorted[rank == 0 ? 0 : rank - 1];
        if (edges.empty() || e > edges.back()) edges.push_back(e);
    }
    std::vector<std::size_t> raw(n);
    std::vector<char> used(edges.size() + 1, 0);
    for (std::size_t r = 0; r < n; ++r) {
        raw[r] = static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), values[r]) - edges.begin());
        used[raw[r]] = 1;
    }
    std::vector<State> remap(used.size(), -1);
    std::vector<std::string> states;
    for (std::size_t b = 0; b < used.size(); ++b)
        if (used[b]) {
            remap[b] = static_cast<State>(states.size());
            states.push_back(fmt::format("bin{}", states.size()));
        }
    std::vector<State> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = remap[raw[r]];
    return replace_column(data, v, std::move(states), std::move(col));
}

Dataset binarize(const Dataset& data, VarId v, double threshold) {
    const auto values = numeric_column(data, v);
    std::vector<State> col(values.size());
    for (std::size_t r = 0; r < values.size(); ++r) col[r] = values[r] >= threshold ? 1 : 0;
    return replace_column(data, v, {"0", "1"}, std::move(col));
}

Dataset drop_column(const Dataset& data, VarId v) {
    Schema schema;
    std::vector<std::vector<State>> cols;
    for (std::size_t c = 0; c < data.schema().size(); ++c) {
        if (static_cast<VarId>(c) == v) continue;
        schema.names.push_back(data.schema().names[c]);
        schema.states.push_back(data.schema().states[c]);
        const auto col = data.column(static_cast<VarId>(c));
        cols.emplace_back(col.begin(), col.end());
    }
    if (schema.size() == data.schema().size()) throw InputError("column to drop is out of range");
    return Dataset(std::move(schema), std::move(cols));
}

}  // namespace mimb
