#include "doctest.h"
#include "helpers.hpp"
#include "mimb/random.hpp"
#include "mimb/simulate.hpp"
#include "mimb/theorem.hpp"

using namespace mimb;
using fixtures::S;

TEST_CASE("three experiments with the child manipulated once") {
    const auto d = fixtures::fig2();
    const auto t = d.index_of("T");
    const auto fam = fixtures::family(d, {{"B"}, {"A"}, {"C"}});
    const auto mbs = oracle_mbs(d, t, fam);
    REQUIRE(mbs.size() == 3);
    CHECK(mbs[0] == S(d, {"A"}));
    CHECK(mbs[1] == S(d, {"A", "B", "C"}));
    CHECK(mbs[2] == S(d, {"A", "B", "C"}));
    const auto r = verify(d, t, fam);
    CHECK(r.prediction.union_row == "U1");
    CHECK(r.prediction.intersection_row == "I1");
    CHECK(r.union_set == S(d, {"A", "B", "C"}));
    CHECK(r.intersection_set == S(d, {"A"}));
    CHECK(r.pass());
}

TEST_CASE("target manipulated once") {
    const auto d = fixtures::fig2();
    const auto t = d.index_of("T");
    const auto fam = fixtures::family(d, {{"B"}, {"C"}, {"T"}});
    const auto r = verify(d, t, fam);
    CHECK(r.regime.zeta_t == 1);
    CHECK(r.regime.zeta_class == ZetaRegime::mid);
    CHECK(r.mbs[2] == S(d, {"B", "C"}));
    CHECK(r.union_set == S(d, {"A", "B", "C"}));
    CHECK(r.prediction.union_row == "U3");
    CHECK(r.prediction.intersection_row == "I3");
    CHECK(r.intersection_set.empty());
    CHECK(r.pass());
}

TEST_CASE("target manipulated everywhere loses its parent") {
    const auto d = fixtures::fig2();
    const auto t = d.index_of("T");
    const auto fam = fixtures::family(d, {{"B", "T"}, {"T"}});
    const auto c = classify_regime(d, t, fam);
    CHECK(c.zeta_t == 2);
    CHECK(c.zeta_class == ZetaRegime::all);
    CHECK_FALSE(c.conservative);
    CHECK(c.conservative_minus_t);
    CHECK(c.children_covered);
    const auto r = verify(d, t, fam);
    CHECK(r.prediction.union_row == "U5");
    CHECK(r.union_set == S(d, {"B", "C"}));
    CHECK(r.prediction.intersection_row == "I5");
    CHECK(r.intersection_set.empty());
    CHECK(r.pass());
}

TEST_CASE("children left alone keep the full blanket in every experiment") {
    const auto d = fixtures::fig2();
    const auto t = d.index_of("T");
    const auto r = verify(d, t, fixtures::family(d, {{"A"}, {"C"}}));
    CHECK(r.regime.children_untouched);
    CHECK(r.prediction.intersection_relation == IntersectionRelation::equals_mb);
    CHECK(r.intersection_set == d.markov_blanket(t));
    CHECK(r.pass());
}

TEST_CASE("non-conservative families only bound the union") {
    const auto d = fixtures::fig2();
    const auto t = d.index_of("T");
    const auto r = verify(d, t, fixtures::family(d, {{"B"}, {"B", "A"}}));
    CHECK(r.prediction.union_row == "U2");
    CHECK(r.prediction.union_relation == UnionRelation::between_pa_and_mb);
    CHECK_FALSE(r.prediction.union_exact);
    CHECK(r.union_set == S(d, {"A"}));
    CHECK(r.union_pass);
}

TEST_CASE("empty family") {
    const auto d = fixtures::fig1();
    const InterventionFamily none;
    CHECK_THROWS_AS(oracle_mbs(d, d.index_of("T"), none), InputError);
    CHECK_THROWS_AS(verify(d, d.index_of("T"), none), InputError);
}

TEST_CASE("more experiments never shrink the union") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto d = random_dag(7, 0.35, seed);
        const auto t = static_cast<VarId>(seed % 7);
        Rng rng(seed);
        InterventionFamily fam;
        VarSet prev;
        for (int i = 0; i < 4; ++i) {
            VarSet s;
            for (VarId v = 0; v < 7; ++v)
                if (rng.uniform() < 0.3) s.push_back(v);
            fam.sets.push_back(s);
            const auto r = verify(d, t, fam);
            CHECK(sets::is_subset(prev, r.union_set));
            CHECK(sets::is_subset(r.intersection_set, r.union_set));
            prev = r.union_set;
        }
    }
}

// A child that is itself a parent of another child keeps a path to the
// target when it is manipulated, so it survives every experiment.
TEST_CASE("manipulated child feeding a sibling stays in the intersection") {
    const auto d = Dag::from_names({"T", "c", "d"}, {{"T", "c"}, {"T", "d"}, {"c", "d"}});
    const auto t = d.index_of("T");
    const auto fam = fixtures::family(d, {{"c"}, {"d"}});
    const auto r = verify(d, t, fam);
    CHECK(r.prediction.intersection_row == "I1");
    CHECK(r.intersection_set == S(d, {"c"}));
    CHECK(d.parents(t).empty());
    CHECK_FALSE(r.intersection_pass);
}

// A spouse shared by two children, each manipulated in a different
// experiment, keeps a collider path to the target in both.
TEST_CASE("spouse of two children survives when they are covered separately") {
    const auto d = Dag::from_names({"T", "c", "e", "s"}, {{"T", "c"}, {"T", "e"}, {"s", "c"}, {"s", "e"}});
    const auto t = d.index_of("T");
    const auto r = verify(d, t, fixtures::family(d, {{"c"}, {"e"}}));
    CHECK(r.prediction.intersection_row == "I1");
    CHECK(r.intersection_set == S(d, {"s"}));
    CHECK_FALSE(r.intersection_pass);
}

// A parent of the target that also points at the target's child becomes
// a spouse once the target is manipulated.
TEST_CASE("parent that is also a co-parent reappears as a spouse") {
    const auto d = Dag::from_names({"P", "T", "C"}, {{"P", "T"}, {"P", "C"}, {"T", "C"}});
    const auto t = d.index_of("T");
    const auto fam = fixtures::family(d, {{"T"}, {"T"}});
    const auto r = verify(d, t, fam);
    CHECK(r.prediction.union_row == "U5");
    CHECK(r.union_set == S(d, {"P", "C"}));
    CHECK(r.prediction.ch_sp == S(d, {"C"}));
    CHECK_FALSE(r.union_pass);
}

TEST_CASE("fuzzing is deterministic and covers every row") {
    const auto a = fuzz_theorems(20, 4, 6, 0.4, 3);
    const auto b = fuzz_theorems(20, 4, 6, 0.4, 3);
    REQUIRE(a.rows.size() == 12);
    CHECK(to_json(a) == to_json(b));
    for (const auto& r : a.rows) {
        CAPTURE(r.row);
        CHECK(r.trials + r.vacuous == 20);
        CHECK(r.trials > 0);
        if (r.failures > 0) CHECK(r.witness.has_value());
    }
    CHECK_THROWS_AS(fuzz_theorems(1, 5, 4, 0.3, 1), InputError);
}
