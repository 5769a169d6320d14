#include "doctest.h"
#include "helpers.hpp"
#include "mimb/ci.hpp"
#include "mimb/hiton.hpp"
#include "mimb/random.hpp"
#include "mimb/simulate.hpp"
#include "mimb/theorem.hpp"

using namespace mimb;
using fixtures::S;

namespace {

HitonOptions exact() {
    HitonOptions o;
    o.max_cond = 64;
    o.symmetry_correction = true;
    return o;
}

}  // namespace

TEST_CASE("pc and mb on the four-node example") {
    const auto d = fixtures::fig1();
    OracleBackend b(std::vector<Dag>{d});
    const auto t = d.index_of("T");
    const auto pc = hiton_pc(b, 0, t, HitonOptions{});
    CHECK(pc.pc == S(d, {"A", "B"}));
    CHECK(pc.sepsets.size() == 1);
    CHECK(pc.sepsets.at(d.index_of("F")).empty());
    const auto mb = hiton_mb(b, 0, t, HitonOptions{});
    CHECK(mb.mb == S(d, {"A", "B", "F"}));
}

TEST_CASE("chain ends are separated by the middle") {
    const auto d = Dag::from_names({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
    OracleBackend b(std::vector<Dag>{d});
    const auto r = hiton_pc(b, 0, 0, HitonOptions{});
    CHECK(r.pc == VarSet{1});
    CHECK(r.sepsets.at(2) == VarSet{1});
    CHECK(hiton_mb(b, 0, 2, HitonOptions{}).mb == VarSet{1});
}

TEST_CASE("a childless target has mb equal to pc") {
    const auto d = Dag::from_names({"A", "B", "T"}, {{"A", "T"}, {"B", "T"}, {"A", "B"}});
    OracleBackend b(std::vector<Dag>{d});
    const auto r = hiton_mb(b, 0, 2, HitonOptions{});
    CHECK(r.mb == r.pc);
    CHECK(r.mb == VarSet{0, 1});
}

TEST_CASE("manipulating the child strips it and its co-parent") {
    const auto d = fixtures::fig2();
    OracleBackend b(std::vector<Dag>{d.intervene(S(d, {"B"}))});
    CHECK(hiton_mb(b, 0, d.index_of("T"), HitonOptions{}).mb == S(d, {"A"}));
}

TEST_CASE("baseline union and intersection on the three-experiment examples") {
    const auto d = fixtures::fig2();
    const auto t = d.index_of("T");
    {
        OracleBackend b(d, fixtures::family(d, {{"B"}, {"A"}, {"C"}}));
        const auto r = baseline(b, t, HitonOptions{});
        CHECK(r.mb == S(d, {"A", "B", "C"}));
        CHECK(r.pa == S(d, {"A"}));
        CHECK(r.n_test == b.ledger().total());
        REQUIRE(r.tests_per_dataset.size() == 3);
        CHECK(r.tests_per_dataset[0] + r.tests_per_dataset[1] + r.tests_per_dataset[2] == r.n_test);
    }
    {
        OracleBackend b(d, fixtures::family(d, {{"B"}, {"C"}, {"T"}}));
        CHECK(baseline(b, t, HitonOptions{}).mb == S(d, {"A", "B", "C"}));
    }
    {
        OracleBackend b(std::vector<Dag>{d});
        const auto r = baseline(b, t, HitonOptions{});
        CHECK(r.mb == r.pa);
        CHECK(r.mb == S(d, {"A", "B", "C"}));
    }
}

TEST_CASE("oracle hiton-mb recovers the post-intervention blanket") {
    int mismatches = 0, draws = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto d = random_dag(4 + seed % 6, 0.35, seed);
        const auto n = static_cast<VarId>(d.size());
        for (int rep = 0; rep < 5; ++rep) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rep)));
            VarSet targets;
            for (VarId v = 0; v < n; ++v)
                if (rng.uniform() < 0.25) targets.push_back(v);
            const auto post = d.intervene(targets);
            OracleBackend b(std::vector<Dag>{post});
            const auto t = static_cast<VarId>(rng.below(static_cast<std::uint64_t>(n)));
            ++draws;
            mismatches += hiton_mb(b, 0, t, exact()).mb != post.markov_blanket(t);
        }
    }
    CHECK(draws == 500);
    CHECK(mismatches == 0);
}

TEST_CASE("oracle baseline obeys the predicted relations") {
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto d = random_dag(6, 0.35, seed + 1000);
        const auto t = static_cast<VarId>(seed % 6);
        FamilyOptions o;
        o.regime = static_cast<ZetaRegime>(seed % 3);
        o.require_conservative = o.regime != ZetaRegime::all;
        InterventionFamily fam;
        try {
            fam = generate_intervention_family(d, t, 3, o, seed);
        } catch (const ConstraintError&) {
            continue;
        }
        OracleBackend b(d, fam);
        const auto r = baseline(b, t, exact());
        const auto mbs = oracle_mbs(d, t, fam);
        VarSet u, in = mbs[0];
        for (const auto& m : mbs) {
            u = sets::set_union(u, m);
            in = sets::set_intersection(in, m);
        }
        failures += r.mb != u || r.pa != in || !sets::is_subset(r.pa, r.mb);
    }
    CHECK(failures == 0);
}
