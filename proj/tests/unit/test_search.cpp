#include <random>

#include "doctest.h"
#include "rainbow/constructions.hpp"
#include "rainbow/search.hpp"
#include "reference.hpp"
#include "repro.hpp"

using namespace rainbow;

namespace {

Instance k4() {
    Instance inst;
    inst.r = 2;
    inst.t = 2;
    inst.num_vertices = 4;
    inst.matchings = {Matching{{0, 1}, {2, 3}}, Matching{{0, 2}, {1, 3}}, Matching{{0, 3}, {1, 2}}};
    return inst;
}

// K_{2,2} with parts {0,1} and {2,3}.
Instance k22_pair() {
    Instance inst;
    inst.r = 2;
    inst.t = 2;
    inst.num_vertices = 4;
    inst.partition = Partition{{VertexSet{0, 1}, VertexSet{2, 3}}};
    inst.matchings = {Matching{{0, 2}, {1, 3}}, Matching{{0, 3}, {1, 2}}};
    return inst;
}

// One matching repeated: a rainbow matching takes one edge from each copy.
Instance doubled() {
    Instance inst;
    inst.r = 2;
    inst.t = 2;
    inst.num_vertices = 4;
    inst.matchings = {Matching{{0, 1}, {2, 3}}, Matching{{0, 1}, {2, 3}}};
    return inst;
}

} // namespace

TEST_CASE("find_rainbow on the small named instances") {
    CHECK(find_rainbow(k22_pair(), 2).none());
    CHECK_FALSE(reference::has_rainbow(k22_pair(), 2));

    // Every pair of disjoint edges of K4 lies in a single perfect matching.
    CHECK(find_rainbow(k4(), 2).none());
    CHECK_FALSE(reference::has_rainbow(k4(), 2));

    const auto found = find_rainbow(doubled(), 2);
    REQUIRE(found.found());
    CHECK(check_certificate(doubled(), *found.certificate));
    CHECK(reference::has_rainbow(doubled(), 2));

    CHECK(find_rainbow(k22_pair(), 1).found());
    CHECK(find_rainbow(simple_F_construction(2, 3), 1).found());
}

TEST_CASE("find_rainbow agrees with brute force on random small instances") {
    std::mt19937_64 rng(2024);
    int found = 0, none = 0;
    for (int round = 0; round < 400; ++round) {
        const std::size_t r = 2 + rng() % 2;
        const std::size_t t = 2 + rng() % 2;
        const std::size_t n = std::min<std::size_t>(12, r * t + rng() % 3);
        const std::size_t N = 1 + rng() % 6;
        const auto inst = rng() % 2 ? repro::random_matchings(r, t, n, N, rng)
                                    : repro::random_partite_matchings(r, t, t + 1, N, rng);
        const std::size_t s = 1 + rng() % t;
        const auto out = find_rainbow(inst, s);
        const bool expected = reference::has_rainbow(inst, s);
        REQUIRE(out.status != SearchStatus::Indeterminate);
        CHECK(out.found() == expected);
        if (out.found()) {
            CHECK(out.certificate->size() == s);
            CHECK(check_certificate(inst, *out.certificate));
            ++found;
        } else {
            ++none;
        }
    }
    CHECK(found > 0);
    CHECK(none > 0);
}

TEST_CASE("monotonicity in size and preservation under extension") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 100; ++round) {
        auto inst = repro::random_matchings(2, 3, 7, 3, rng);
        bool none_seen = false;
        for (std::size_t s = 1; s <= 3; ++s) {
            const auto out = find_rainbow(inst, s);
            if (none_seen) CHECK(out.none());
            none_seen = none_seen || out.none();
            if (out.found()) {
                auto bigger = inst;
                bigger.matchings.push_back(repro::random_matchings(2, 3, 7, 1, rng).matchings[0]);
                CHECK(check_certificate(bigger, *out.certificate));
                CHECK(find_rainbow(bigger, s).found());
            }
        }
    }
}

TEST_CASE("single-threaded runs are deterministic and parallel runs sound") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 30; ++round) {
        const auto inst = repro::random_matchings(3, 3, 10, 6, rng);
        const auto a = find_rainbow(inst, 3);
        const auto b = find_rainbow(inst, 3);
        CHECK(a.status == b.status);
        CHECK(a.certificate == b.certificate);
        SearchBudget par;
        par.threads = 4;
        const auto p = find_rainbow(inst, 3, par);
        CHECK(p.status == a.status);
        if (p.found()) CHECK(check_certificate(inst, *p.certificate));
    }
}

TEST_CASE("budget exhaustion is reported as Indeterminate") {
    for (const auto& inst : {simple_F_construction(4, 3), fixed_r_construction(3, 12), t2_complete_construction(5)}) {
        const auto full = find_rainbow(inst, inst.t);
        REQUIRE(full.none());
        REQUIRE(full.nodes_visited > 10);
        const auto capped = find_rainbow(inst, inst.t, SearchBudget::nodes(full.nodes_visited / 2));
        CHECK(capped.status == SearchStatus::Indeterminate);
        CHECK_FALSE(capped.certificate);
    }
}

TEST_CASE("strong property") {
    Instance one = k4();
    one.matchings.resize(1);
    CHECK(check_strong_property(one).status == StrongStatus::Holds);

    CHECK(check_strong_property(k4()).status == StrongStatus::Holds);
    CHECK(reference::strong_property_holds(k4()));

    const auto fails = check_strong_property(doubled());
    REQUIRE(fails.status == StrongStatus::Fails);
    REQUIRE(fails.witness);
    const auto& picks = fails.witness->picks;
    REQUIRE(picks.size() == 2);
    CHECK(picks[0].edge.disjoint(picks[1].edge));
    CHECK(picks[0].color != picks[1].color);
    CHECK_FALSE(reference::strong_property_holds(doubled()));

    CHECK(check_strong_property(t2_complete_construction(2)).status == StrongStatus::Holds);
    CHECK(check_strong_property(t2_partite_construction(3)).status == StrongStatus::Holds);

    std::mt19937_64 rng(99);
    for (int round = 0; round < 150; ++round) {
        const auto inst = repro::random_matchings(2, 2, 5 + rng() % 2, 1 + rng() % 4, rng);
        const auto out = check_strong_property(inst);
        CHECK((out.status == StrongStatus::Holds) == reference::strong_property_holds(inst));
    }
}

TEST_CASE("exact value search on small universes") {
    ExactValueParams p;
    p.r = 2;
    p.t = 2;
    p.universe = 4;
    p.partite = true;
    auto res = exact_value_search(p);
    CHECK(res.complete);
    CHECK(res.n_max == 2);
    CHECK(res.witness.num_colors() == 2);
    CHECK(find_rainbow(res.witness, 2).none());

    p.partite = false;
    res = exact_value_search(p);
    CHECK(res.complete);
    CHECK(res.n_max >= 2);
    CHECK(res.n_max <= res.candidate_matchings * p.multiplicity_cap);
    CHECK(find_rainbow(res.witness, 2).none());

    p.r = 3;
    p.universe = 6;
    p.partite = true;
    res = exact_value_search(p);
    CHECK(res.n_max >= 2);
    CHECK(find_rainbow(res.witness, 2).none());
    CHECK(res.n_max <= res.candidate_matchings);

    CHECK(enumerate_matchings(2, 2, 4, std::nullopt).size() == 3);
    CHECK(enumerate_matchings(2, 2, 4, consecutive_partition(4, 2)).size() == 2);
    CHECK_THROWS_AS((void)exact_value_search({2, 3, 5, false, 1}), DomainError);
}
