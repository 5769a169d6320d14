#include "mimb/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "json.hpp"
#include "mimb/network.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mimb {

Schema Schema::of(const BayesianNetwork& bn) {
    return Schema{bn.dag().names(), bn.all_states()};
}

std::optional<VarId> Schema::find(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<VarId>(it - names.begin());
}

VarId Schema::index_of(const std::string& name) const {
    if (auto v = find(name)) return *v;
    throw InputError("unknown variable '" + name + "'");
}

VarSet Schema::to_set(const std::vector<std::string>& ns) const {
    VarSet out;
    for (const auto& n : ns) out.push_back(index_of(n));
    return sets::normalized(std::move(out));
}

std::vector<std::string> Schema::to_names(const VarSet& s) const {
    std::vector<std::string> out;
    for (VarId v : s) out.push_back(names.at(static_cast<std::size_t>(v)));
    return out;
}

Dataset::Dataset(Schema schema, std::vector<std::vector<State>> columns, std::optional<VarSet> provenance)
    : schema_(std::move(schema)), columns_(std::move(columns)), provenance_(std::move(provenance)) {
    if (schema_.names.size() != schema_.states.size()) throw InputError("schema names and states differ in length");
    if (columns_.size() != schema_.size()) throw InputError("column count does not match the schema");
    rows_ = columns_.empty() ? 0 : columns_.front().size();
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (columns_[c].size() != rows_) throw InputError("ragged columns");
        const auto card = static_cast<State>(schema_.states[c].size());
        for (State s : columns_[c])
            if (s < 0 || s >= card) throw InputError("state index out of range in column '" + schema_.names[c] + "'");
    }
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
    std::vector<std::vector<State>> cols(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        cols[c].reserve(rows.size());
        for (auto r : rows) cols[c].push_back(columns_[c].at(r));
    }
    return Dataset(schema_, std::move(cols), provenance_);
}

DatasetBundle::DatasetBundle(std::vector<Dataset> datasets) : datasets_(std::move(datasets)) {
    if (datasets_.empty()) throw InputError("a bundle needs at least one dataset");
    for (const auto& d : datasets_)
        if (!(d.schema() == datasets_.front().schema()))
            throw InputError("datasets in a bundle must share one schema");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw InputError(fmt::format("line {}: unterminated quote", line_no));
    out.push_back(std::move(cur));
    return out;
}

std::optional<double> as_number(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Dataset read_csv(const std::string& path, const Schema* schema) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> raw;  // per column
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line, line_no);
        if (header.empty()) {
            header = std::move(cells);
            raw.resize(header.size());
            continue;
        }
        if (cells.size() != header.size())
            throw InputError(fmt::format("{}: line {} has {} cells, header has {}", path, line_no, cells.size(),
                                         header.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].empty() || cells[c] == "NA")
                throw InputError(fmt::format("{}: line {}: missing value in column '{}'", path, line_no, header[c]));
            raw[c].push_back(std::move(cells[c]));
        }
    }
    if (header.empty()) throw InputError("'" + path + "' is empty");
    if (std::set<std::string>(header.begin(), header.end()).size() != header.size())
        throw InputError("'" + path + "' has duplicate column names");

    Schema out_schema;
    std::vector<std::size_t> source(header.size());  // schema column -> csv column
    if (schema) {
        out_schema = *schema;
        if (header.size() != schema->size())
            throw InputError(fmt::format("{}: {} columns, expected {}", path, header.size(), schema->size()));
        for (std::size_t c = 0; c < header.size(); ++c) {
            auto v = schema->find(header[c]);
            if (!v) throw InputError(fmt::format("{}: unknown column '{}'", path, header[c]));
            source[static_cast<std::size_t>(*v)] = c;
        }
    } else {
        out_schema.names = header;
        for (std::size_t c = 0; c < header.size(); ++c) {
            source[c] = c;
            std::set<std::string> labels(raw[c].begin(), raw[c].end());
            std::vector<std::string> states(labels.begin(), labels.end());
            const bool numeric = std::all_of(states.begin(), states.end(), [](const auto& s) { return as_number(s); });
            if (numeric)
                std::stable_sort(states.begin(), states.end(),
                                 [](const auto& a, const auto& b) { return *as_number(a) < *as_number(b); });
            if (states.empty()) states.push_back("0");
            out_schema.states.push_back(std::move(states));
        }
    }

    std::vector<std::vector<State>> cols(out_schema.size());
    for (std::size_t v = 0; v < out_schema.size(); ++v) {
        std::unordered_map<std::string, State> lookup;
        for (std::size_t s = 0; s < out_schema.states[v].size(); ++s)
            lookup.emplace(out_schema.states[v][s], static_cast<State>(s));
        const auto& src = raw[source[v]];
        cols[v].reserve(src.size());
        for (std::size_t r = 0; r < src.size(); ++r) {
            auto it = lookup.find(src[r]);
            if (it == lookup.end())
                throw InputError(fmt::format("{}: data row {}: '{}' is not a state of '{}'", path, r + 1, src[r],
                                             out_schema.names[v]));
            cols[v].push_back(it->second);
        }
    }
    return Dataset(std::move(out_schema), std::move(cols));
}

void write_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    const auto& schema = data.schema();
    for (std::size_t c = 0; c < schema.size(); ++c) out << (c ? "," : "") << csv_field(schema.names[c]);
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < schema.size(); ++c)
            out << (c ? "," : "") << csv_field(schema.states[c][static_cast<std::size_t>(data.at(r, static_cast<VarId>(c)))]);
        out << '\n';
    }
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open manifest '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("manifest '" + path + "': " + e.what());
    }
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        const fs::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).lexically_normal().string();
    };
    Manifest m;
    try {
        for (const auto& d : j.at("datasets")) m.datasets.push_back(resolve(d.get<std::string>()));
        for (const auto& v : j.at("variables")) {
            m.schema.names.push_back(v.at("name").get<std::string>());
            m.schema.states.push_back(v.at("states").get<std::vector<std::string>>());
        }
        if (j.contains("target")) m.target = j["target"].get<std::string>();
        if (j.contains("network")) m.network = resolve(j["network"].get<std::string>());
        if (j.contains("interventions"))
            m.interventions = j["interventions"].get<std::vector<std::vector<std::string>>>();
    } catch (const json::exception& e) {
        throw InputError("manifest '" + path + "': " + e.what());
    }
    if (m.datasets.empty()) throw InputError("manifest '" + path + "' lists no datasets");
    if (m.interventions && m.interventions->size() != m.datasets.size())
        throw InputError("manifest '" + path + "': interventions and datasets differ in length");
    return m;
}

void save_manifest(const std::string& path, const Manifest& m) {
    json j;
    const fs::path base = fs::path(path).parent_path();
    auto relative = [&](const std::string& p) {
        return fs::path(p).is_absolute() ? p : fs::path(p).lexically_relative(base.empty() ? "." : base).string();
    };
    j["datasets"] = json::array();
    for (const auto& d : m.datasets) j["datasets"].push_back(relative(d));
    j["variables"] = json::array();
    for (std::size_t v = 0; v < m.schema.size(); ++v)
        j["variables"].push_back({{"name", m.schema.names[v]}, {"states", m.schema.states[v]}});
    if (m.target) j["target"] = *m.target;
    if (m.network) j["network"] = relative(*m.network);
    if (m.interventions) j["interventions"] = *m.interventions;
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

DatasetBundle load_bundle(const Manifest& m) {
    std::vector<Dataset> ds;
    for (std::size_t i = 0; i < m.datasets.size(); ++i) {
        ds.push_back(read_csv(m.datasets[i], &m.schema));
        if (m.interventions) ds.back().set_provenance(m.schema.to_set((*m.interventions)[i]));
    }
    return DatasetBundle(std::move(ds));
}

}  // namespace mimb
