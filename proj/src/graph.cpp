#include "mimb/graph.hpp"

#include <array>
#include <deque>
#include <functional>
#include <set>

namespace mimb {

Dag::Dag(std::vector<std::string> names, const std::vector<Edge>& edges) : names_(std::move(names)) {
    const auto n = names_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (names_[i].empty()) throw InputError("empty variable name");
        if (!index_.emplace(names_[i], static_cast<VarId>(i)).second)
            throw InputError("duplicate variable '" + names_[i] + "'");
    }
    parents_.assign(n, {});
    children_.assign(n, {});
    std::set<Edge> seen;
    for (const auto& [from, to] : edges) {
        if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= n || static_cast<std::size_t>(to) >= n)
            throw InputError("edge endpoint out of range");
        if (from == to) throw InputError("self-edge on '" + names_[from] + "'");
        if (!seen.insert({from, to}).second)
            throw InputError("duplicate edge " + names_[from] + " -> " + names_[to]);
        parents_[to].push_back(from);
        children_[from].push_back(to);
    }
    for (auto& p : parents_) std::sort(p.begin(), p.end());
    for (auto& c : children_) std::sort(c.begin(), c.end());
    edge_count_ = seen.size();

    // Kahn's algorithm, smallest index first so the order is canonical.
    std::vector<std::size_t> indegree(n);
    for (std::size_t v = 0; v < n; ++v) indegree[v] = parents_[v].size();
    std::set<VarId> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.insert(static_cast<VarId>(v));
    while (!ready.empty()) {
        const VarId v = *ready.begin();
        ready.erase(ready.begin());
        topo_.push_back(v);
        for (VarId c : children_[v])
            if (--indegree[c] == 0) ready.insert(c);
    }
    if (topo_.size() != n) throw InputError("graph contains a directed cycle");
}

Dag Dag::from_names(std::vector<std::string> names,
                    const std::vector<std::pair<std::string, std::string>>& edges) {
    std::unordered_map<std::string, VarId> idx;
    for (std::size_t i = 0; i < names.size(); ++i) idx.emplace(names[i], static_cast<VarId>(i));
    std::vector<Edge> ids;
    ids.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        auto ia = idx.find(a);
        auto ib = idx.find(b);
        if (ia == idx.end()) throw InputError("unknown variable '" + a + "'");
        if (ib == idx.end()) throw InputError("unknown variable '" + b + "'");
        ids.emplace_back(ia->second, ib->second);
    }
    return Dag(std::move(names), ids);
}

std::optional<VarId> Dag::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VarId Dag::index_of(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw InputError("unknown variable '" + std::string(name) + "'");
}

VarSet Dag::to_set(const std::vector<std::string>& names) const {
    VarSet out;
    for (const auto& n : names) out.push_back(index_of(n));
    return sets::normalized(std::move(out));
}

std::vector<std::string> Dag::to_names(const VarSet& s) const {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (VarId v : s) out.push_back(name(v));
    return out;
}

void Dag::check_var(VarId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= size())
        throw InputError("variable index " + std::to_string(v) + " out of range");
}

VarSet Dag::spouses(VarId v) const {
    check_var(v);
    VarSet out;
    for (VarId c : children(v))
        for (VarId p : parents(c)) out.push_back(p);
    out = sets::normalized(std::move(out));
    sets::erase(out, v);
    out = sets::set_difference(out, parents(v));
    return sets::set_difference(out, children(v));
}

VarSet Dag::descendants(VarId v) const {
    check_var(v);
    std::vector<char> seen(size(), 0);
    std::vector<VarId> stack(children(v).begin(), children(v).end());
    while (!stack.empty()) {
        const VarId u = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = 1;
        for (VarId c : children(u)) stack.push_back(c);
    }
    VarSet out;
    for (std::size_t u = 0; u < size(); ++u)
        if (seen[u]) out.push_back(static_cast<VarId>(u));
    return out;
}

VarSet Dag::non_descendants(VarId v) const {
    const VarSet desc = descendants(v);
    VarSet out;
    for (std::size_t u = 0; u < size(); ++u) {
        const auto id = static_cast<VarId>(u);
        if (id != v && !sets::contains(desc, id)) out.push_back(id);
    }
    return out;
}

VarSet Dag::ancestors_of(const VarSet& s) const {
    std::vector<char> seen(size(), 0);
    std::vector<VarId> stack(s.begin(), s.end());
    while (!stack.empty()) {
        const VarId u = stack.back();
        stack.pop_back();
        check_var(u);
        if (seen[u]) continue;
        seen[u] = 1;
        for (VarId p : parents(u)) stack.push_back(p);
    }
    VarSet out;
    for (std::size_t u = 0; u < size(); ++u)
        if (seen[u]) out.push_back(static_cast<VarId>(u));
    return out;
}

VarSet Dag::markov_blanket(VarId v) const {
    check_var(v);
    VarSet out = sets::set_union(parents(v), children(v));
    return sets::set_union(out, spouses(v));
}

std::vector<Edge> Dag::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t p = 0; p < size(); ++p)
        for (VarId c : children_[p]) out.emplace_back(static_cast<VarId>(p), c);
    return out;
}

Dag Dag::intervene(const VarSet& targets) const {
    for (VarId t : targets) check_var(t);
    const VarSet cut = sets::normalized(targets);
    std::vector<Edge> kept;
    kept.reserve(edge_count_);
    for (const auto& e : edges())
        if (!sets::contains(cut, e.second)) kept.push_back(e);
    return Dag(names_, kept);
}

namespace {

void check_query(const Dag& dag, VarId x, VarId y, const VarSet& z) {
    dag.check_var(x);
    dag.check_var(y);
    for (VarId v : z) dag.check_var(v);
    if (x == y) throw InputError("d-separation query needs two distinct variables");
    if (std::find(z.begin(), z.end(), x) != z.end() || std::find(z.begin(), z.end(), y) != z.end())
        throw InputError("conditioning set contains a query endpoint");
}

}  // namespace

bool is_d_separated(const Dag& dag, VarId x, VarId y, const VarSet& z) {
    check_query(dag, x, y, z);
    const auto n = dag.size();
    std::vector<char> in_z(n, 0);
    for (VarId v : z) in_z[v] = 1;
    // A collider is open iff it is an ancestor of (or in) z.
    std::vector<char> opens(n, 0);
    for (VarId v : dag.ancestors_of(sets::normalized(z))) opens[v] = 1;

    // Direction flag: 0 = ball arrived from a child (moving up),
    // 1 = arrived from a parent (moving down).
    std::vector<std::array<char, 2>> visited(n, {0, 0});
    std::deque<std::pair<VarId, int>> queue{{x, 0}};
    while (!queue.empty()) {
        const auto [v, dir] = queue.front();
        queue.pop_front();
        if (visited[v][dir]) continue;
        visited[v][dir] = 1;
        if (v == y && !in_z[v]) return false;
        if (dir == 0) {
            if (in_z[v]) continue;
            for (VarId p : dag.parents(v)) queue.emplace_back(p, 0);
            for (VarId c : dag.children(v)) queue.emplace_back(c, 1);
        } else {
            if (!in_z[v])
                for (VarId c : dag.children(v)) queue.emplace_back(c, 1);
            if (opens[v])
                for (VarId p : dag.parents(v)) queue.emplace_back(p, 0);
        }
    }
    return true;
}

bool brute_force_d_separated(const Dag& dag, VarId x, VarId y, const VarSet& z) {
    check_query(dag, x, y, z);
    const auto n = dag.size();
    std::vector<char> in_z(n, 0);
    for (VarId v : z) in_z[v] = 1;
    std::vector<char> desc_in_z(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (VarId d : dag.descendants(static_cast<VarId>(v)))
            if (in_z[d]) desc_in_z[v] = 1;

    auto path_open = [&](const std::vector<VarId>& path) {
        for (std::size_t k = 1; k + 1 < path.size(); ++k) {
            const VarId prev = path[k - 1], mid = path[k], next = path[k + 1];
            const bool collider = dag.has_edge(prev, mid) && dag.has_edge(next, mid);
            if (collider) {
                if (!in_z[mid] && !desc_in_z[mid]) return false;
            } else if (in_z[mid]) {
                return false;
            }
        }
        return true;
    };

    std::vector<char> on_path(n, 0);
    std::vector<VarId> path{x};
    on_path[x] = 1;
    std::function<bool(VarId)> search = [&](VarId v) -> bool {
        if (v == y) return path_open(path);
        VarSet nbrs = sets::set_union(dag.parents(v), dag.children(v));
        for (VarId w : nbrs) {
            if (on_path[w]) continue;
            on_path[w] = 1;
            path.push_back(w);
            const bool open = search(w);
            path.pop_back();
            on_path[w] = 0;
            if (open) return true;
        }
        return false;
    };
    return !search(x);
}

void InterventionFamily::validate(const Dag& dag) const {
    if (sets.empty()) throw InputError("intervention family needs at least one experiment");
    for (const auto& s : sets)
        for (VarId v : s) dag.check_var(v);
}

VarSet InterventionFamily::manipulated() const {
    VarSet out;
    for (const auto& s : sets) out = sets::set_union(out, sets::normalized(s));
    return out;
}

std::size_t InterventionFamily::zeta(VarId v) const {
    return static_cast<std::size_t>(std::count_if(sets.begin(), sets.end(), [v](const VarSet& s) {
        return std::find(s.begin(), s.end(), v) != s.end();
    }));
}

bool is_conservative(const InterventionFamily& fam) {
    for (VarId v : fam.manipulated())
        if (fam.zeta(v) == fam.size()) return false;
    return true;
}

bool is_conservative_excluding(const InterventionFamily& fam, VarId excluded) {
    for (VarId v : fam.manipulated())
        if (v != excluded && fam.zeta(v) == fam.size()) return false;
    return true;
}

}  // namespace mimb
