#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mimb/graph.hpp"

namespace mimb {

/// A Dag with a conditional probability table per variable.
///
/// CPT layout: one row per configuration of the variable's CPT parents, in
/// the order the parents were declared, with the last parent varying
/// fastest; each row holds one probability per own state.
class BayesianNetwork {
  public:
    BayesianNetwork() = default;

    /// Validates cardinalities, table shapes, and that every row sums to 1
    /// within 1e-9. `cpt_parents[v]` must be a permutation of dag.parents(v).
    BayesianNetwork(Dag dag, std::vector<std::vector<std::string>> states,
                    std::vector<std::vector<VarId>> cpt_parents, std::vector<std::vector<double>> cpts);

    const Dag& dag() const { return dag_; }
    std::size_t size() const { return dag_.size(); }

    const std::vector<std::string>& states(VarId v) const { return states_.at(v); }
    const std::vector<std::vector<std::string>>& all_states() const { return states_; }
    int cardinality(VarId v) const { return static_cast<int>(states_.at(v).size()); }

    /// Parents in CPT row-order (declaration order).
    const std::vector<VarId>& cpt_parents(VarId v) const { return cpt_parents_.at(v); }
    const std::vector<double>& cpt(VarId v) const { return cpts_.at(v); }
    std::size_t row_count(VarId v) const { return cpts_.at(v).size() / states_.at(v).size(); }

    std::span<const double> row(VarId v, std::size_t r) const {
        const auto k = states_.at(v).size();
        return std::span<const double>(cpts_.at(v)).subspan(r * k, k);
    }

    /// Row for the parent states found in `assignment` (indexed by VarId).
    template <typename Int>
    std::size_t row_index(VarId v, std::span<const Int> assignment) const {
        std::size_t r = 0;
        for (VarId p : cpt_parents_[v]) r = r * states_[p].size() + static_cast<std::size_t>(assignment[p]);
        return r;
    }

    /// P(assignment) = product over variables of P(v | parents).
    double joint_probability(std::span<const int> assignment) const;

  private:
    Dag dag_;
    std::vector<std::vector<std::string>> states_;
    std::vector<std::vector<VarId>> cpt_parents_;
    std::vector<std::vector<double>> cpts_;
};

/// Parses the line-oriented network format. Errors are InputError with
/// the offending line number in the message.
BayesianNetwork parse_network(std::string_view text);
BayesianNetwork load_network(const std::string& path);

/// Inverse of parse_network; probabilities are printed round-trip exact.
std::string format_network(const BayesianNetwork& bn);

}  // namespace mimb
