#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mimb/types.hpp"

namespace mimb {

class BayesianNetwork;

/// Ordered variable names with their state labels.
struct Schema {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> states;

    static Schema of(const BayesianNetwork& bn);

    std::size_t size() const { return names.size(); }
    int cardinality(VarId v) const { return static_cast<int>(states.at(static_cast<std::size_t>(v)).size()); }
    std::optional<VarId> find(const std::string& name) const;
    VarId index_of(const std::string& name) const;  // InputError when unknown
    VarSet to_set(const std::vector<std::string>& names) const;
    std::vector<std::string> to_names(const VarSet& s) const;

    friend bool operator==(const Schema&, const Schema&) = default;
};

using State = std::int32_t;

/// Column-major table of state indices.
class Dataset {
  public:
    Dataset() = default;
    /// Validates column lengths and state ranges.
    Dataset(Schema schema, std::vector<std::vector<State>> columns, std::optional<VarSet> provenance = std::nullopt);

    const Schema& schema() const { return schema_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    std::span<const State> column(VarId v) const { return columns_.at(static_cast<std::size_t>(v)); }
    State at(std::size_t row, VarId v) const { return columns_[static_cast<std::size_t>(v)][row]; }

    /// Manipulated-variable set of the experiment that produced the data, if known.
    const std::optional<VarSet>& provenance() const { return provenance_; }
    void set_provenance(std::optional<VarSet> p) { provenance_ = std::move(p); }

    Dataset select_rows(std::span<const std::size_t> rows) const;

  private:
    Schema schema_;
    std::vector<std::vector<State>> columns_;
    std::size_t rows_ = 0;
    std::optional<VarSet> provenance_;
};

/// Datasets sharing one schema (names, order and state labels).
class DatasetBundle {
  public:
    DatasetBundle() = default;
    explicit DatasetBundle(std::vector<Dataset> datasets);

    std::size_t size() const { return datasets_.size(); }
    const Dataset& operator[](std::size_t i) const { return datasets_.at(i); }
    const Schema& schema() const { return datasets_.front().schema(); }
    auto begin() const { return datasets_.begin(); }
    auto end() const { return datasets_.end(); }

  private:
    std::vector<Dataset> datasets_;
};

/// Reads a CSV with a header row. With a schema, cells must be declared
/// state labels and columns may appear in any order. Without one, the
/// schema is inferred: states sorted numerically when every label parses
/// as a number, lexicographically otherwise.
Dataset read_csv(const std::string& path, const Schema* schema = nullptr);
void write_csv(const std::string& path, const Dataset& data);

/// JSON manifest describing a bundle on disk.
struct Manifest {
    std::vector<std::string> datasets;  // paths, absolute or relative to the manifest
    Schema schema;
    std::optional<std::string> target;
    std::optional<std::string> network;
    std::optional<std::vector<std::vector<std::string>>> interventions;
};

/// Dataset paths in the returned manifest are resolved against the
/// manifest's directory.
Manifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const Manifest& m);
DatasetBundle load_bundle(const Manifest& m);

}  // namespace mimb
