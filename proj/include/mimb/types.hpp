#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mimb {

/// Dense index of a variable in declaration order.
using VarId = int;

/// Sorted, duplicate-free list of variable indices. Algorithms that need
/// insertion order (cpc, ipc) use plain vectors and say so.
using VarSet = std::vector<VarId>;

/// Malformed user input: bad names, bad files, violated preconditions.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A requested combination of generation constraints cannot be met.
class ConstraintError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant does not hold. Always a bug.
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

namespace sets {

inline VarSet normalized(VarSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool contains(const VarSet& s, VarId v) {
    return std::binary_search(s.begin(), s.end(), v);
}

/// Linear membership for order-preserving lists.
inline bool contains_unsorted(const std::vector<VarId>& s, VarId v) {
    return std::find(s.begin(), s.end(), v) != s.end();
}

inline void insert(VarSet& s, VarId v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
}

inline void erase(VarSet& s, VarId v) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it != s.end() && *it == v) s.erase(it);
}

inline VarSet set_union(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VarSet set_intersection(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VarSet set_difference(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const VarSet& a, const VarSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace sets
}  // namespace mimb
