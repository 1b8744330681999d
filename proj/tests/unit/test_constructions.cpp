#include <random>
#include <set>

#include "doctest.h"
#include "rainbow/constructions.hpp"
#include "rainbow/search.hpp"
#include "reference.hpp"
#include "repro.hpp"

using namespace rainbow;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    std::size_t c = 1;
    for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t p = 1;
    while (e--) p *= b;
    return p;
}

void check_no_rainbow(const Instance& inst, bool brute) {
    REQUIRE(validate_instance(inst).ok());
    CHECK(find_rainbow(inst, inst.t).none());
    if (brute) CHECK_FALSE(reference::has_rainbow(inst, inst.t));
}

} // namespace

TEST_CASE("fixed-r counts and layout") {
    const auto a = fixed_r_construction(3, 12);
    CHECK(a.num_colors() == 27);
    CHECK(a.num_vertices == 36);
    REQUIRE(a.partition);
    CHECK(a.partition->parts.size() == 3);
    CHECK(fixed_r_construction(4, 8).num_colors() == 1);
    // All |X_1|...|X_r| matchings are kept, at least (floor(t/r)-1)^r of them.
    CHECK(fixed_r_construction(3, 7).num_colors() == 1 * 1 * 2);
    CHECK(fixed_r_construction(3, 7).num_colors() >= ipow(7 / 3 - 1, 3));
    CHECK(fixed_r_construction(3, 10).num_colors() == ipow(2, 2) * 3);
    CHECK_THROWS_AS((void)fixed_r_construction(3, 5), DomainError);
    CHECK_THROWS_AS((void)fixed_r_construction(2, 8), DomainError);

    const auto blocks = fixed_r_blocks(3, 13);
    REQUIRE(blocks.size() == 3);
    CHECK(blocks[0] == std::vector<int>{1, 2, 3});
    CHECK(blocks[1] == std::vector<int>{4, 5, 6});
    CHECK(blocks[2] == std::vector<int>{7, 8, 9, 10});
}

TEST_CASE("fixed-r tuples use every symbol once per position") {
    for (std::size_t t : {6, 7, 9, 12}) {
        const std::size_t r = 3;
        const auto blocks = fixed_r_blocks(r, t);
        for (int x1 : blocks[0])
            for (int x2 : blocks[1])
                for (int x3 : blocks[2]) {
                    const auto tuples = fixed_r_tuples({x1, x2, x3}, t);
                    REQUIRE(tuples.size() == t);
                    for (std::size_t pos = 0; pos < r; ++pos) {
                        std::set<std::size_t> seen;
                        for (const auto& tu : tuples) seen.insert(fixed_r_local_index(tu.entries[pos], r, t));
                        CHECK(seen.size() == t);
                    }
                }
    }
    const ShiftTuple s{{1, 2, -1}};
    CHECK(s.shifted(1).entries == std::vector<int>{2, -1, 1});
    CHECK(s.shifted(2).entries == std::vector<int>{-1, 1, 2});
}

TEST_CASE("fixed-r families have no rainbow matching") {
    check_no_rainbow(fixed_r_construction(3, 6), true);
    check_no_rainbow(fixed_r_construction(3, 9), false);
    check_no_rainbow(fixed_r_construction(3, 12), false);
    check_no_rainbow(fixed_r_construction(4, 8), true);
}

TEST_CASE("simple-F counts") {
    const auto a = simple_F_construction(2, 3);
    CHECK(a.num_colors() == binom(2, 1) * 2);
    CHECK(a.num_vertices == 6);
    const auto b = simple_F_construction(4, 2);
    CHECK(b.num_colors() == binom(3, 3) * 8);
    CHECK(b.num_vertices == 8);
    CHECK(simple_F_construction(4, 3).num_colors() == binom(5, 3) * 8);
    const auto odd = simple_F_construction(3, 3);
    CHECK(odd.num_colors() == binom(2, 1) * 2);
    CHECK(odd.num_vertices == 9);
    CHECK(simple_F_construction(2, 2).num_colors() == 2);
}

TEST_CASE("simple-F families have no rainbow matching") {
    check_no_rainbow(simple_F_construction(2, 3), true);
    check_no_rainbow(simple_F_construction(2, 4), true);
    check_no_rainbow(simple_F_construction(4, 2), true);
    check_no_rainbow(simple_F_construction(3, 3), true);
    check_no_rainbow(simple_F_construction(4, 3), false);
    check_no_rainbow(simple_F_construction(5, 2), true);
}

TEST_CASE("simple-f counts and no rainbow matching") {
    const auto a = simple_f_construction(3, 3);
    CHECK(a.num_colors() == 6);
    CHECK(a.num_vertices == 9);
    CHECK(a.partition);
    CHECK(simple_f_construction(3, 2).num_colors() == 2);
    CHECK(simple_f_construction(5, 3).num_colors() == 36);
    CHECK(simple_f_construction(4, 3).num_colors() == 6);
    CHECK_THROWS_AS((void)simple_f_construction(2, 3), DomainError);
    check_no_rainbow(a, true);
    check_no_rainbow(simple_f_construction(3, 2), true);
    check_no_rainbow(simple_f_construction(3, 4), false);
    check_no_rainbow(simple_f_construction(4, 3), true);
    check_no_rainbow(simple_f_construction(5, 3), false);
}

TEST_CASE("lifting uniformity") {
    const auto lifted = lift_uniformity(simple_F_construction(2, 3), 3);
    CHECK(lifted.num_colors() == 4);
    CHECK(lifted.num_vertices == 9);
    CHECK(lifted.r == 3);
    check_no_rainbow(lifted, true);

    Instance single = simple_F_construction(2, 3);
    single.matchings.resize(1);
    const auto one = lift_uniformity(single, 3);
    CHECK(one.num_colors() == 1);
    CHECK(validate_instance(one).ok());

    const auto part = lift_uniformity(simple_f_construction(3, 3), 4);
    REQUIRE(part.partition);
    CHECK(part.partition->parts.size() == 4);
    CHECK(validate_instance(part).ok());

    Instance loose = simple_F_construction(2, 3);
    loose.num_vertices = 7;
    CHECK_THROWS((void)lift_uniformity(loose, 3));
}

TEST_CASE("lifting and rainbow existence") {
    // A rainbow matching of the lift projects to one of the input, so absence is
    // inherited. The converse needs the picked edges at distinct positions, which
    // holds for the constructions but not for arbitrary inputs.
    std::mt19937_64 rng(31);
    int yes = 0, no = 0, lost = 0;
    for (int round = 0; round < 150; ++round) {
        const std::size_t t = 2 + rng() % 2;
        const auto base = repro::random_matchings(2, t, 2 * t, 1 + rng() % 5, rng);
        const auto up = lift_uniformity(base, 3);
        const bool a = find_rainbow(base, t).found();
        const bool b = find_rainbow(up, t).found();
        if (!a) CHECK_FALSE(b);
        if (a && !b) ++lost;
        CHECK(b == reference::has_rainbow(up, t));
        (a ? yes : no)++;
    }
    CHECK(yes > 0);
    CHECK(no > 0);
    MESSAGE("inputs whose rainbow matching did not survive the lift: " << lost);

    for (const auto& [base, r] : {std::pair{simple_F_construction(2, 3), 3}, std::pair{simple_F_construction(2, 4), 3},
                                  std::pair{simple_f_construction(3, 3), 4}, std::pair{fixed_r_construction(3, 6), 4}}) {
        const auto up = lift_uniformity(base, static_cast<std::size_t>(r));
        CHECK(find_rainbow(base, base.t).none() == find_rainbow(up, up.t).none());
        CHECK(find_rainbow(base, base.t - 1).found() == find_rainbow(up, up.t - 1).found());
    }
}

TEST_CASE("t = 2 families") {
    const auto c2 = t2_complete_construction(2);
    CHECK(c2.num_colors() == 3);
    CHECK(c2.num_vertices == 4);
    CHECK(t2_complete_construction(3).num_colors() == 10);
    CHECK(t2_complete_construction(4).num_colors() == 35);
    CHECK(check_strong_property(c2).status == StrongStatus::Holds);
    CHECK(check_strong_property(t2_complete_construction(3)).status == StrongStatus::Holds);
    CHECK(reference::strong_property_holds(t2_complete_construction(3)));

    const auto p3 = t2_partite_construction(3);
    CHECK(p3.num_colors() == 4);
    CHECK(p3.num_vertices == 6);
    CHECK(t2_partite_construction(2).num_colors() == 2);
    CHECK(t2_partite_construction(5).num_colors() == 16);
    CHECK(check_strong_property(p3).status == StrongStatus::Holds);
    CHECK(reference::strong_property_holds(p3));
    check_no_rainbow(p3, true);
    check_no_rainbow(t2_complete_construction(4), true);
}

TEST_CASE("sum tuple systems") {
    const auto s3 = generate_sum_tuples(3, 3);
    CHECK(s3.tuples.size() >= 1);
    CHECK(verify_sum_tuples(s3));
    const auto single = tuples_to_matchings_F(s3);
    CHECK(single.num_vertices == 6);
    CHECK(check_strong_property(single).status == StrongStatus::Holds);

    const auto s6 = generate_sum_tuples(3, 6);
    CHECK(s6.tuples.size() >= 2);
    CHECK(verify_sum_tuples(s6));
    const auto inst = tuples_to_matchings_F(s6);
    CHECK(inst.r == 3);
    CHECK(inst.num_vertices == 9);
    CHECK(inst.num_colors() == s6.tuples.size());
    CHECK(check_strong_property(inst).status == StrongStatus::Holds);
    CHECK(reference::strong_property_holds(inst));

    CHECK_THROWS_AS((void)generate_sum_tuples(3, 5), DomainError);

    SumTupleSystem bad;
    bad.n = 6;
    bad.t = 3;
    bad.tuples = {{0b000111, 0b011000, 0b100000}};
    CHECK_FALSE(verify_sum_tuples(bad));
    CHECK_THROWS((void)tuples_to_matchings_F(bad));

    const auto capped = generate_sum_tuples(3, 9, SearchBudget::nodes(5));
    CHECK(verify_sum_tuples(capped));
    CHECK(capped.tuples.size() >= 1);
}
