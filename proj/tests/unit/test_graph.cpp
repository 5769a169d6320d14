#include "doctest.h"
#include "helpers.hpp"
#include "mimb/simulate.hpp"

using namespace mimb;
using fixtures::S;

TEST_CASE("dag construction rejects bad input") {
    CHECK_THROWS_AS(Dag::from_names({"A", "B"}, {{"A", "B"}, {"B", "A"}}), InputError);
    CHECK_THROWS_AS(Dag::from_names({"A"}, {{"A", "A"}}), InputError);
    CHECK_THROWS_AS(Dag::from_names({"A", "B"}, {{"A", "B"}, {"A", "B"}}), InputError);
    CHECK_THROWS_AS(Dag::from_names({"A", "A"}, {}), InputError);
    CHECK_THROWS_AS(Dag::from_names({"A"}, {{"A", "Z"}}), InputError);
}

TEST_CASE("family relations on the four-node example") {
    const auto d = fixtures::fig1();
    const auto t = d.index_of("T");
    CHECK(d.parents(t) == S(d, {"A"}));
    CHECK(d.children(t) == S(d, {"B"}));
    CHECK(d.spouses(t) == S(d, {"F"}));
    CHECK(markov_blanket_of(d, t) == S(d, {"A", "B", "F"}));
    CHECK(d.descendants(d.index_of("A")) == S(d, {"T", "B"}));
    CHECK(d.edge_count() == 3);
}

TEST_CASE("a parent that is also a co-parent stays out of the spouse set") {
    const auto d = Dag::from_names({"P", "T", "C"}, {{"P", "T"}, {"P", "C"}, {"T", "C"}});
    CHECK(d.spouses(d.index_of("T")).empty());
    CHECK(d.markov_blanket(d.index_of("T")) == S(d, {"P", "C"}));
}

TEST_CASE("intervention removes exactly the incoming edges of the targets") {
    const auto d = fixtures::fig1();
    const auto post = apply_intervention(d, S(d, {"T"}));
    CHECK(post.edge_count() == 2);
    CHECK(post.parents(post.index_of("T")).empty());
    CHECK(post.children(post.index_of("T")) == S(d, {"B"}));
    CHECK(apply_intervention(d, {}) == d);
}

TEST_CASE("d-separation basics") {
    // chain A -> B -> C, fork B <- A -> C, collider A -> C <- B with child D
    const auto chain = Dag::from_names({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    CHECK_FALSE(is_d_separated(chain, 0, 2, {}));
    CHECK(is_d_separated(chain, 0, 2, {1}));

    const auto fork = Dag::from_names({"A", "B", "C"}, {{"B", "A"}, {"B", "C"}});
    CHECK_FALSE(is_d_separated(fork, 0, 2, {}));
    CHECK(is_d_separated(fork, 0, 2, {1}));

    const auto coll = Dag::from_names({"A", "B", "C", "D"}, {{"A", "C"}, {"B", "C"}, {"C", "D"}});
    CHECK(is_d_separated(coll, 0, 1, {}));
    CHECK_FALSE(is_d_separated(coll, 0, 1, {2}));
    CHECK_FALSE(is_d_separated(coll, 0, 1, {3}));

    CHECK_THROWS_AS(is_d_separated(chain, 0, 0, {}), InputError);
    CHECK_THROWS_AS(is_d_separated(chain, 0, 2, {0}), InputError);
}

TEST_CASE("surgery on the target cuts it from its parent") {
    const auto d = fixtures::fig1();
    const auto a = d.index_of("A"), t = d.index_of("T");
    CHECK_FALSE(is_d_separated(d.intervene(S(d, {"B"})), a, t, {}));
    CHECK(is_d_separated(d.intervene(S(d, {"T"})), a, t, {}));
}

TEST_CASE("bayes-ball agrees with path enumeration on random graphs") {
    int mismatches = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto d = random_dag(6, 0.35, seed);
        const auto n = static_cast<VarId>(d.size());
        for (VarId x = 0; x < n; ++x)
            for (VarId y = x + 1; y < n; ++y) {
                VarSet rest;
                for (VarId v = 0; v < n; ++v)
                    if (v != x && v != y) rest.push_back(v);
                for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
                    VarSet z;
                    for (std::size_t i = 0; i < rest.size(); ++i)
                        if (mask & (1u << i)) z.push_back(rest[i]);
                    mismatches += is_d_separated(d, x, y, z) != brute_force_d_separated(d, x, y, z);
                }
            }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("markov blanket d-separates the target from everything else") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const auto d = random_dag(8, 0.3, seed);
        for (VarId t = 0; t < 8; ++t) {
            const auto mb = d.markov_blanket(t);
            for (VarId v = 0; v < 8; ++v)
                if (v != t && !sets::contains(mb, v)) CHECK(is_d_separated(d, t, v, mb));
        }
    }
}

TEST_CASE("conservative families") {
    const auto d = fixtures::fig2();
    CHECK(is_conservative(fixtures::family(d, {{"B"}, {"A"}, {"C"}})));
    CHECK_FALSE(is_conservative(fixtures::family(d, {{"B"}, {"B", "A"}})));
    CHECK(is_conservative(fixtures::family(d, {{}, {}})));
    const auto f4 = fixtures::family(d, {{"B", "T"}, {"T"}});
    CHECK_FALSE(is_conservative(f4));
    CHECK(is_conservative_excluding(f4, d.index_of("T")));
    CHECK(f4.zeta(d.index_of("T")) == 2);
}

TEST_CASE("topological order respects every edge") {
    const auto d = random_dag(10, 0.4, 7);
    std::vector<int> pos(d.size());
    const auto& order = d.topological_order();
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    for (const auto& [a, b] : d.edges()) CHECK(pos[a] < pos[b]);
}
