#pragma once

#include <string>
#include <vector>

#include "mimb/graph.hpp"

namespace fixtures {

using mimb::Dag;
using mimb::InterventionFamily;
using mimb::VarSet;

inline VarSet S(const Dag& d, std::vector<std::string> names) { return d.to_set(names); }

// A -> T -> B <- F
inline Dag fig1() { return Dag::from_names({"A", "T", "B", "F"}, {{"A", "T"}, {"T", "B"}, {"F", "B"}}); }

// A -> T -> B <- C
inline Dag fig2() { return Dag::from_names({"A", "T", "B", "C"}, {{"A", "T"}, {"T", "B"}, {"C", "B"}}); }

inline InterventionFamily family(const Dag& d, const std::vector<std::vector<std::string>>& sets) {
    InterventionFamily f;
    for (const auto& s : sets) f.sets.push_back(d.to_set(s));
    return f;
}

// T -> B <- A, B -> C <- A
inline Dag fig7() { return Dag::from_names({"T", "A", "B", "C"}, {{"T", "B"}, {"A", "B"}, {"B", "C"}, {"A", "C"}}); }

}  // namespace fixtures
