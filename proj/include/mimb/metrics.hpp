#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mimb/dataset.hpp"

namespace mimb {

struct Score {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Empty `found` has precision 1 only when `truth` is empty too; recall of
/// an empty truth is 1; F1 is 0 when precision + recall is 0.
Score score(const VarSet& found, const VarSet& truth);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation; 0 for fewer than two values
};

MeanSd mean_sd(const std::vector<double>& xs);
/// "A±B" with two decimals, e.g. "0.98±0.03".
std::string format_mean_sd(const MeanSd& m, int decimals = 2);

/// Rows whose `by` label parses below the threshold go first.
struct ThresholdRule {
    double threshold;
};
/// Rows whose `by` label equals the label go first.
struct LabelRule {
    std::string label;
};
using SplitRule = std::variant<ThresholdRule, LabelRule>;

/// Row indices of the two partitions. InputError if either is empty or a
/// threshold meets a non-numeric label.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_rows(const Dataset& data, VarId by,
                                                                          const SplitRule& rule);

/// Two datasets partitioned by the rule; `by` stays in both.
DatasetBundle split_dataset(const Dataset& data, VarId by, const SplitRule& rule);

/// Equal-frequency binning of a numeric column; ties at a boundary go to
/// the lower bin and only realized bins become states ("bin0", ...).
Dataset discretize(const Dataset& data, VarId v, std::size_t bins);

/// Numeric column to "0" (below threshold) / "1" (at or above).
Dataset binarize(const Dataset& data, VarId v, double threshold);

Dataset drop_column(const Dataset& data, VarId v);

}  // namespace mimb
