#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "rainbow/constructions.hpp"
#include "rainbow/finder.hpp"
#include "rainbow/search.hpp"
#include "repro.hpp"

using namespace rainbow;

namespace {

std::vector<Edge> distinct_edges(const Instance& inst) {
    std::set<Edge> s;
    for (const auto& m : inst.matchings)
        for (const auto& e : m.edges) s.insert(e);
    return {s.begin(), s.end()};
}

std::uint64_t count_containing(const std::vector<Edge>& fam, const VertexSet& core) {
    return static_cast<std::uint64_t>(
        std::count_if(fam.begin(), fam.end(), [&](const Edge& e) { return core.is_subset_of(e.vertices); }));
}

// Big-integer form of |petal| * base^|S| >= |family|.
bool spread_ok(std::uint64_t petal, std::uint64_t family, std::uint64_t base, std::size_t s) {
    BigInt lhs = petal;
    for (std::size_t i = 0; i < s; ++i) lhs *= base;
    return lhs >= family;
}

// Replays the decomposition and checks spread, maximality and the partition property.
void check_decomposition(const Instance& inst, const SpreadDecomposition& dec) {
    const auto all = distinct_edges(inst);
    std::vector<Edge> family = all;
    const std::uint64_t base = inst.t * inst.r + inst.t;
    CHECK(dec.base == base);
    std::size_t covered = 0;
    for (const auto& step : dec.steps) {
        CHECK(step.family_size == family.size());
        CHECK(step.core.size() <= inst.r - 1);
        CHECK(!step.petals.empty());
        CHECK(step.petals.size() == count_containing(family, step.core));
        CHECK(spread_ok(step.petals.size(), family.size(), base, step.core.size()));
        for (VertexId v = 0; v < inst.num_vertices; ++v) {
            if (step.core.contains(v)) continue;
            VertexSet ext = step.core;
            ext.insert(v);
            CHECK_FALSE(spread_ok(count_containing(family, ext), family.size(), base, ext.size()));
        }
        std::erase_if(family, [&](const Edge& e) { return step.core.is_subset_of(e.vertices); });
        covered += step.petals.size();
    }
    CHECK(BigInt(family.size()) <= dec.threshold);
    auto residual = dec.residual;
    std::sort(residual.begin(), residual.end());
    std::sort(family.begin(), family.end());
    CHECK(residual == family);
    CHECK(covered + dec.residual.size() == all.size());
    for (const auto& e : all) CHECK((dec.step_of(e).has_value() != dec.in_residual(e)));
}

} // namespace

TEST_CASE("spread inequality") {
    CHECK(eq_spread(36, 36, 6, 0));
    CHECK_FALSE(eq_spread(35, 36, 6, 0));
    CHECK(eq_spread(1, 36, 6, 2));
    CHECK_FALSE(eq_spread(1, 37, 6, 2));
    CHECK(eq_spread(1, ~std::uint64_t{0}, ~std::uint64_t{0}, 3));
}

TEST_CASE("decomposition below the threshold has no steps") {
    const auto inst = simple_F_construction(2, 3);
    const auto dec = spread_decompose(inst);
    CHECK(dec.steps.empty());
    CHECK(dec.residual.size() == distinct_edges(inst).size());
    CHECK(dec.threshold == 81);
}

TEST_CASE("decomposition above the threshold") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 40; ++round) {
        // Many distinct edges: r=2, t=2 on 12 vertices has 66 possible edges, threshold 36.
        const auto inst = repro::random_distinct_matchings(2, 2, 12, 40, rng);
        const auto dec = spread_decompose(inst);
        if (distinct_edges(inst).size() > 36) CHECK(!dec.steps.empty());
        check_decomposition(inst, dec);
    }
    for (int round = 0; round < 10; ++round) {
        const auto inst = repro::random_distinct_matchings(3, 2, 16, 200, rng);
        check_decomposition(inst, spread_decompose(inst));
    }
}

TEST_CASE("dollar selection") {
    // Residual edges each in one color: plain counting.
    Instance inst;
    inst.r = 2;
    inst.t = 2;
    inst.num_vertices = 8;
    inst.matchings = {Matching{{0, 1}, {2, 3}}, Matching{{4, 5}, {6, 7}}, Matching{{0, 2}, {5, 7}},
                      Matching{{1, 3}, {4, 6}}};
    auto dec = spread_decompose(inst);
    auto rep = dollar_select(dec, inst);
    CHECK(rep.total == BigRational(8));
    CHECK(rep.money[0] == BigRational(2));
    CHECK_FALSE(rep.within_one);

    // A shared edge in four colors pays a quarter to each.
    Instance shared;
    shared.r = 2;
    shared.t = 1;
    shared.num_vertices = 2;
    shared.matchings.assign(4, Matching{{0, 1}});
    dec = spread_decompose(shared);
    rep = dollar_select(dec, shared);
    for (const auto& m : rep.money) CHECK(m == BigRational(1, 4));
    CHECK(rep.total == BigRational(1));
    CHECK(rep.color == 0);
    CHECK(rep.within_one);
    CHECK(rep.m == 1);
    CHECK(edge_degree(shared, Edge{0, 1}) == 4);

    // Money is conserved on random instances and the chosen color is within one unit when N >= |residual|.
    std::mt19937_64 rng(17);
    for (int round = 0; round < 100; ++round) {
        const auto r2 = repro::random_matchings(2, 2, 5, 12, rng);
        const auto d = spread_decompose(r2);
        const auto rp = dollar_select(d, r2);
        BigRational sum = 0;
        for (const auto& m : rp.money) sum += m;
        CHECK(sum == BigRational(d.residual.size()));
        CHECK(rp.total == sum);
        if (d.residual.size() <= r2.num_colors()) {
            CHECK(rp.within_one);
            CHECK(rp.money[rp.color] <= 1);
            for (std::size_t c = 0; c < rp.color; ++c) CHECK(rp.money[c] > 1);
        }
        CHECK(rp.ordered_edges.size() == 2);
        for (std::size_t h = 0; h < rp.ordered_edges.size(); ++h)
            CHECK((h < rp.m) == d.in_residual(rp.ordered_edges[h]));
    }
}

TEST_CASE("Hall assignment against brute force") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 200; ++round) {
        const auto inst = repro::random_matchings(2, 3, 7, 2 + rng() % 7, rng);
        const auto dec = spread_decompose(inst);
        const auto rep = dollar_select(dec, inst);
        const auto colors = hall_assign(rep, inst);
        // Brute force over color assignments for the m residual edges.
        const std::size_t N = inst.num_colors();
        bool exists = false;
        std::vector<std::size_t> pick(rep.m, 0);
        for (;;) {
            std::set<std::size_t> distinct(pick.begin(), pick.end());
            bool ok = distinct.size() == rep.m;
            for (std::size_t h = 0; ok && h < rep.m; ++h) ok = inst.matchings[pick[h]].contains(rep.ordered_edges[h]);
            exists = exists || ok;
            std::size_t i = 0;
            while (i < rep.m && ++pick[i] == N) pick[i++] = 0;
            if (i == rep.m) break;
        }
        CHECK(colors.has_value() == exists);
        if (rep.within_one) CHECK(exists);
        if (colors) {
            CHECK(colors->size() == rep.m);
            CHECK(std::set<std::size_t>(colors->begin(), colors->end()).size() == rep.m);
            for (std::size_t h = 0; h < rep.m; ++h) CHECK(inst.matchings[(*colors)[h]].contains(rep.ordered_edges[h]));
        }
    }
}

TEST_CASE("threshold guarantee at r = 2, t = 2") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 30; ++round) {
        const auto inst = repro::random_distinct_matchings(2, 2, 12, 36, rng);
        const auto out = find_rainbow_constructive(inst);
        CHECK(out.above_threshold);
        CHECK(out.path == FinderPath::Constructive);
        REQUIRE(out.outcome.found());
        CHECK(check_certificate(inst, *out.outcome.certificate));
    }
}

TEST_CASE("augment with the whole matching residual") {
    Instance shared;
    shared.r = 2;
    shared.t = 2;
    shared.num_vertices = 4;
    shared.matchings.assign(3, Matching{{0, 1}, {2, 3}});
    const auto dec = spread_decompose(shared);
    const auto rep = dollar_select(dec, shared);
    CHECK(rep.m == 2);
    const auto colors = hall_assign(rep, shared);
    REQUIRE(colors);
    const auto res = augment(rep, *colors, dec, shared);
    REQUIRE(res.certificate);
    CHECK(check_certificate(shared, *res.certificate));
    CHECK(find_rainbow_constructive(shared).path == FinderPath::Constructive);
}

TEST_CASE("constructions fall back and report no rainbow matching") {
    const auto sf = simple_F_construction(2, 3);
    const auto out = find_rainbow_constructive(sf);
    CHECK(out.path == FinderPath::Fallback);
    CHECK(out.outcome.none());
    CHECK_FALSE(out.above_threshold);

    Instance one = sf;
    one.matchings.resize(1);
    const auto single = find_rainbow_constructive(one);
    CHECK(single.outcome.none());
    CHECK(single.path == FinderPath::Fallback);

    for (const auto& inst : {simple_f_construction(3, 3), fixed_r_construction(3, 6), t2_complete_construction(3),
                             t2_partite_construction(4), simple_F_construction(4, 2)}) {
        const auto o = find_rainbow_constructive(inst);
        CHECK(o.outcome.none());
    }
}

TEST_CASE("constructive results agree with exhaustive search") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 150; ++round) {
        const auto inst = repro::random_matchings(2, 2 + rng() % 2, 6 + rng() % 3, 1 + rng() % 8, rng);
        const auto c = find_rainbow_constructive(inst);
        const auto e = find_rainbow(inst, inst.t);
        CHECK(c.outcome.status == e.status);
        if (c.outcome.found()) CHECK(check_certificate(inst, *c.outcome.certificate));
        const auto j = to_json(c);
        CHECK(j.contains("path"));
    }
}
