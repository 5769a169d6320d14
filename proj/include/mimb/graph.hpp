#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mimb/types.hpp"

namespace mimb {

using Edge = std::pair<VarId, VarId>;

/// Directed acyclic graph over named variables. Immutable after
/// construction; surgery returns a new graph.
class Dag {
  public:
    Dag() = default;

    /// Throws InputError on self-edges, duplicate edges, out-of-range
    /// endpoints, duplicate names, or cycles.
    Dag(std::vector<std::string> names, const std::vector<Edge>& edges);

    static Dag from_names(std::vector<std::string> names,
                          const std::vector<std::pair<std::string, std::string>>& edges);

    std::size_t size() const { return names_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(VarId v) const { return names_.at(static_cast<std::size_t>(v)); }

    std::optional<VarId> find(std::string_view name) const;
    /// Throws InputError for unknown names.
    VarId index_of(std::string_view name) const;
    VarSet to_set(const std::vector<std::string>& names) const;
    std::vector<std::string> to_names(const VarSet& s) const;

    const VarSet& parents(VarId v) const { return parents_.at(static_cast<std::size_t>(v)); }
    const VarSet& children(VarId v) const { return children_.at(static_cast<std::size_t>(v)); }
    VarSet spouses(VarId v) const;
    VarSet descendants(VarId v) const;
    VarSet non_descendants(VarId v) const;
    VarSet ancestors_of(const VarSet& s) const;  // includes s itself
    VarSet markov_blanket(VarId v) const;

    bool has_edge(VarId from, VarId to) const { return sets::contains(children(from), to); }
    bool adjacent(VarId a, VarId b) const { return has_edge(a, b) || has_edge(b, a); }

    /// Edges sorted by (parent, child).
    std::vector<Edge> edges() const;
    const std::vector<VarId>& topological_order() const { return topo_; }

    /// Post-intervention graph: every edge into a target is dropped.
    Dag intervene(const VarSet& targets) const;

    void check_var(VarId v) const;

    friend bool operator==(const Dag& a, const Dag& b) {
        return a.names_ == b.names_ && a.parents_ == b.parents_;
    }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VarId> index_;
    std::vector<VarSet> parents_;
    std::vector<VarSet> children_;
    std::vector<VarId> topo_;
    std::size_t edge_count_ = 0;
};

/// Reachability (Bayes-ball) form of the d-separation criterion.
/// Throws InputError if x == y, x or y is in z, or an index is invalid.
bool is_d_separated(const Dag& dag, VarId x, VarId y, const VarSet& z);

/// Enumerates every simple undirected path and blocks it per the
/// chain/fork/collider rules. Exponential; test oracle for small graphs.
bool brute_force_d_separated(const Dag& dag, VarId x, VarId y, const VarSet& z);

inline VarSet markov_blanket_of(const Dag& dag, VarId t) { return dag.markov_blanket(t); }
inline Dag apply_intervention(const Dag& dag, const VarSet& targets) { return dag.intervene(targets); }

/// One manipulated-variable set per experiment.
struct InterventionFamily {
    std::vector<VarSet> sets;

    std::size_t size() const { return sets.size(); }
    /// Throws InputError if empty or naming variables outside the graph.
    void validate(const Dag& dag) const;

    VarSet manipulated() const;
    /// Number of experiments that manipulate v.
    std::size_t zeta(VarId v) const;
};

/// Every manipulated variable is left alone by at least one experiment.
bool is_conservative(const InterventionFamily& fam);
/// Same rule with `excluded` removed from every set first.
bool is_conservative_excluding(const InterventionFamily& fam, VarId excluded);

}  // namespace mimb
