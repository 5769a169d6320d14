#include "mimb/network.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace mimb {

BayesianNetwork::BayesianNetwork(Dag dag, std::vector<std::vector<std::string>> states,
                                 std::vector<std::vector<VarId>> cpt_parents,
                                 std::vector<std::vector<double>> cpts)
    : dag_(std::move(dag)), states_(std::move(states)), cpt_parents_(std::move(cpt_parents)),
      cpts_(std::move(cpts)) {
    const auto n = dag_.size();
    if (states_.size() != n || cpt_parents_.size() != n || cpts_.size() != n)
        throw InputError("network tables do not match the variable count");
    for (std::size_t v = 0; v < n; ++v) {
        const auto& name = dag_.name(static_cast<VarId>(v));
        if (states_[v].size() < 2) throw InputError("variable '" + name + "' needs at least two states");
        if (std::set<std::string>(states_[v].begin(), states_[v].end()).size() != states_[v].size())
            throw InputError("variable '" + name + "' has duplicate state labels");
        if (sets::normalized(cpt_parents_[v]) != dag_.parents(static_cast<VarId>(v)) ||
            cpt_parents_[v].size() != dag_.parents(static_cast<VarId>(v)).size())
            throw InputError("CPT parents of '" + name + "' disagree with the graph");
        std::size_t rows = 1;
        for (VarId p : cpt_parents_[v]) rows *= states_[p].size();
        const auto k = states_[v].size();
        if (cpts_[v].size() != rows * k)
            throw InputError(fmt::format("CPT of '{}' has {} entries, expected {}", name, cpts_[v].size(), rows * k));
        for (std::size_t r = 0; r < rows; ++r) {
            double sum = 0.0;
            for (std::size_t s = 0; s < k; ++s) {
                const double p = cpts_[v][r * k + s];
                if (!(p >= 0.0) || !std::isfinite(p))
                    throw InputError(fmt::format("CPT of '{}' has an invalid probability in row {}", name, r));
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw InputError(fmt::format("CPT of '{}' row {} sums to {}", name, r, sum));
        }
    }
}

double BayesianNetwork::joint_probability(std::span<const int> assignment) const {
    double p = 1.0;
    for (std::size_t v = 0; v < size(); ++v) {
        const auto id = static_cast<VarId>(v);
        p *= row(id, row_index<int>(id, assignment))[static_cast<std::size_t>(assignment[v])];
    }
    return p;
}

namespace {

struct PendingVariable {
    std::vector<std::string> states;
    std::size_t var_line = 0;
    std::optional<std::vector<std::string>> parents;
    std::size_t parents_line = 0;
    bool has_cpt = false;
    std::size_t cpt_line = 0;
    std::vector<std::pair<std::size_t, std::vector<double>>> rows;  // (line, values)
};

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw InputError(fmt::format("line {}: {}", line, what));
}

double parse_probability(const std::string& tok, std::size_t line) {
    double v = 0.0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end) fail(line, "expected a probability, got '" + tok + "'");
    return v;
}

}  // namespace

BayesianNetwork parse_network(std::string_view text) {
    std::vector<std::string> order;
    std::map<std::string, PendingVariable> vars;
    std::string cpt_owner;  // name whose CPT rows are being read

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tokens = split_ws(line);
        if (tokens.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        const auto& kw = tokens[0];
        if (kw == "VAR") {
            cpt_owner.clear();
            if (tokens.size() < 4) fail(line_no, "VAR needs a name and at least two states");
            const auto& name = tokens[1];
            if (auto it = vars.find(name); it != vars.end() && it->second.var_line != 0)
                fail(line_no, "duplicate declaration of '" + name + "'");
            auto& pv = vars[name];
            pv.states.assign(tokens.begin() + 2, tokens.end());
            pv.var_line = line_no;
            if (std::set<std::string>(pv.states.begin(), pv.states.end()).size() != pv.states.size())
                fail(line_no, "duplicate state label for '" + name + "'");
            order.push_back(name);
        } else if (kw == "PARENTS") {
            cpt_owner.clear();
            if (tokens.size() < 2) fail(line_no, "PARENTS needs a variable name");
            auto& pv = vars[tokens[1]];
            if (pv.parents) fail(line_no, "duplicate PARENTS for '" + tokens[1] + "'");
            pv.parents = std::vector<std::string>(tokens.begin() + 2, tokens.end());
            pv.parents_line = line_no;
        } else if (kw == "CPT") {
            if (tokens.size() != 2) fail(line_no, "CPT takes exactly one variable name");
            auto& pv = vars[tokens[1]];
            if (pv.has_cpt) fail(line_no, "duplicate CPT for '" + tokens[1] + "'");
            pv.has_cpt = true;
            pv.cpt_line = line_no;
            cpt_owner = tokens[1];
        } else {
            if (cpt_owner.empty()) fail(line_no, "unexpected '" + kw + "' outside a CPT block");
            std::vector<double> row;
            row.reserve(tokens.size());
            for (const auto& tok : tokens) row.push_back(parse_probability(tok, line_no));
            vars[cpt_owner].rows.emplace_back(line_no, std::move(row));
        }
        if (nl == text.size()) break;
    }

    std::map<std::string, VarId> index;
    for (std::size_t i = 0; i < order.size(); ++i) index.emplace(order[i], static_cast<VarId>(i));
    for (const auto& [name, pv] : vars) {
        if (pv.var_line == 0) {
            const auto line = pv.parents_line ? pv.parents_line : pv.cpt_line;
            fail(line, "'" + name + "' is used but never declared with VAR");
        }
    }

    const auto n = order.size();
    std::vector<std::vector<std::string>> states(n);
    std::vector<std::vector<VarId>> cpt_parents(n);
    std::vector<std::vector<double>> cpts(n);
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < n; ++v) {
        const auto& pv = vars.at(order[v]);
        states[v] = pv.states;
        if (pv.parents) {
            std::set<std::string> seen;
            for (const auto& p : *pv.parents) {
                auto it = index.find(p);
                if (it == index.end()) fail(pv.parents_line, "unknown parent '" + p + "' of '" + order[v] + "'");
                if (!seen.insert(p).second) fail(pv.parents_line, "parent '" + p + "' listed twice");
                cpt_parents[v].push_back(it->second);
                edges.emplace_back(it->second, static_cast<VarId>(v));
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        const auto& pv = vars.at(order[v]);
        if (!pv.has_cpt) fail(pv.var_line, "no CPT for '" + order[v] + "'");
        std::size_t expected_rows = 1;
        for (VarId p : cpt_parents[v]) expected_rows *= states[p].size();
        if (pv.rows.size() != expected_rows)
            fail(pv.cpt_line, fmt::format("CPT of '{}' has {} rows, expected {}", order[v], pv.rows.size(),
                                          expected_rows));
        const auto k = states[v].size();
        for (const auto& [line, row] : pv.rows) {
            if (row.size() != k)
                fail(line, fmt::format("row has {} probabilities, '{}' has {} states", row.size(), order[v], k));
            double sum = 0.0;
            for (double p : row) {
                if (p < 0.0) fail(line, "negative probability");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-6) fail(line, fmt::format("row sum {} != 1", sum));
            // Renormalize so the stored table meets the tighter 1e-9 invariant.
            for (double p : row) cpts[v].push_back(p / sum);
        }
    }

    Dag dag;
    try {
        dag = Dag(order, edges);
    } catch (const InputError& e) {
        throw InputError(std::string("network structure: ") + e.what());
    }
    return BayesianNetwork(std::move(dag), std::move(states), std::move(cpt_parents), std::move(cpts));
}

BayesianNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open network file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_network(ss.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string format_network(const BayesianNetwork& bn) {
    std::string out;
    const auto& dag = bn.dag();
    for (std::size_t v = 0; v < bn.size(); ++v) {
        out += "VAR " + dag.name(static_cast<VarId>(v));
        for (const auto& s : bn.states(static_cast<VarId>(v))) out += " " + s;
        out += "\n";
    }
    for (std::size_t v = 0; v < bn.size(); ++v) {
        const auto id = static_cast<VarId>(v);
        out += "\nPARENTS " + dag.name(id);
        for (VarId p : bn.cpt_parents(id)) out += " " + dag.name(p);
        out += "\nCPT " + dag.name(id) + "\n";
        for (std::size_t r = 0; r < bn.row_count(id); ++r) {
            const auto row = bn.row(id, r);
            for (std::size_t s = 0; s < row.size(); ++s) out += fmt::format("{}{}", s ? " " : "", row[s]);
            out += "\n";
        }
    }
    return out;
}

}  // namespace mimb
