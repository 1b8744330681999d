#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "rainbow/behrend.hpp"
#include "rainbow/lattice_probes.hpp"
#include "rainbow/prime_field.hpp"
#include "rainbow/probfield.hpp"
#include "rainbow/search.hpp"
#include "reference.hpp"

using namespace rainbow;

namespace {

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("prime field arithmetic") {
    for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime_u64(n) == trial_division_prime(n));
    CHECK(is_prime_u64((std::uint64_t{1} << 61) - 1));
    CHECK_FALSE(is_prime_u64(3215031751ULL));
    CHECK(next_prime(2592) == 2593);
    CHECK(next_prime(2) == 2);

    const PrimeField f(7);
    CHECK(f.mul(f.inv(3), 3) == 1);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.rank({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}) == 2);
    CHECK(f.determinant({{1, 2}, {3, 4}}) == f.from_int(-2));
    CHECK(f.determinant({{1, 2}, {2, 4}}) == 0);
    CHECK_THROWS_AS(PrimeField(8), DomainError);
}

TEST_CASE("prime choice") {
    const auto p = choose_prime_window(5, 3);
    CHECK(p.lower_bound == 2592);
    CHECK(p.P == 2593);
    CHECK(p.provenance == PrimeProvenance::AdmissibleWindow);
    CHECK_THROWS_AS((void)choose_prime_window(40, 3), DomainError);
    CHECK(choose_prime_relaxed(3, 7).P == 7);
    CHECK_THROWS_AS((void)choose_prime_relaxed(3, 9), DomainError);
    CHECK_THROWS_AS((void)choose_prime_relaxed(5, 3), DomainError);
}

TEST_CASE("Behrend systems") {
    const auto P7 = choose_prime_relaxed(3, 7);
    BehrendOptions ex;
    ex.method = BehrendMethod::Exhaustive;
    const auto sys = behrend_system(P7, 3, ex);
    CHECK(sys.R() == 3);
    CHECK(sys.base_set() == std::vector<std::uint64_t>{0, 1, 3});
    CHECK(sys.optimal());
    CHECK(verify_behrend(sys));

    const auto one = behrend_from_base_set(P7, 3, {0});
    CHECK(one.R() == 1);
    CHECK(verify_behrend(one));
    CHECK_THROWS_AS((void)behrend_from_base_set(P7, 3, {0, 1, 2}), DomainError);
    CHECK_THROWS_AS((void)behrend_from_base_set(P7, 3, {0, 4}), DomainError);

    BehrendOptions sp;
    sp.method = BehrendMethod::Sphere;
    sp.sphere_base = 10;
    sp.sphere_digits = 2;
    const auto sph = behrend_system(choose_prime_relaxed(3, 101), 3, sp);
    CHECK(sph.R() >= 3);
    const auto v = verify_behrend(sph);
    CHECK(v);
    CHECK(v.how == "exhaustive");

    // Independent check of the iff property over all index triples.
    for (const auto* s : {&sys, &sph}) {
        const std::size_t R = s->R();
        for (std::size_t a = 0; a < R; ++a)
            for (std::size_t b = 0; b < R; ++b)
                for (std::size_t c = 0; c < R; ++c) {
                    const std::uint64_t sum = (s->y(0, a) + s->y(1, b) + s->y(2, c)) % s->P();
                    CHECK((sum == 0) == (a == b && b == c));
                }
    }
    CHECK(centroid_free({0, 1, 3, 4}, 3));
    CHECK_FALSE(centroid_free({0, 2, 4}, 3));
    CHECK(behrend_value_limit(7, 3) == 3);
}

TEST_CASE("functionals") {
    const auto a = sample_functional(7, 6, 42);
    const auto b = sample_functional(7, 6, 42);
    CHECK(a.coeffs == b.coeffs);
    CHECK(a.coeffs.size() == 6);
    for (std::uint64_t s = 0; s < 50; ++s) CHECK(sample_functional(101, 9, s).kills_all_ones());
}

TEST_CASE("tuple lattice") {
    const TupleLattice lat(3, 3);
    CHECK(lat.num_z() == 27);
    CHECK(lat.num_tuples() == 36);
    std::vector<std::uint64_t> zs;
    for (std::uint64_t k = 0; k < 36; ++k) {
        lat.tuple(k, zs);
        REQUIRE(zs.size() == 3);
        VertexSet cover;
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(lat.slice(zs[i]) == i);
            CHECK_FALSE(cover.intersects(lat.vertices(zs[i])));
            cover |= lat.vertices(zs[i]);
        }
        CHECK(cover.size() == 9);
        CHECK(lat.index_of(zs) == k);
    }
}

TEST_CASE("partite family matches an independent candidate filter") {
    const std::size_t r = 3, t = 3;
    const auto P = choose_prime_relaxed(t, 7);
    BehrendOptions ex;
    ex.method = BehrendMethod::Exhaustive;
    const auto sys = behrend_system(P, t, ex);
    const TupleLattice lat(r, t);
    std::size_t nonempty = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto f = sample_functional(P.P, r * t, seed);
        const auto rep = build_partite_family(r, t, sys, f);

        std::vector<std::vector<std::uint64_t>> cands;
        std::vector<std::uint64_t> zs;
        for (std::uint64_t k = 0; k < 36; ++k) {
            lat.tuple(k, zs);
            // Characterization by a single h.
            bool by_h = false;
            for (std::size_t h = 0; h < sys.R(); ++h) {
                bool all = true;
                for (std::size_t i = 0; i < t; ++i) all = all && lat.evaluate(f, zs[i]) == sys.y(i, h);
                by_h = by_h || all;
            }
            // Characterization by row membership.
            bool by_rows = true;
            for (std::size_t i = 0; i < t; ++i) {
                bool in_row = false;
                for (std::size_t h = 0; h < sys.R(); ++h) in_row = in_row || lat.evaluate(f, zs[i]) == sys.y(i, h);
                by_rows = by_rows && in_row;
            }
            CHECK(by_h == by_rows);
            if (by_h) cands.push_back(zs);
        }
        std::size_t isolated = 0;
        for (std::size_t a = 0; a < cands.size(); ++a) {
            bool alone = true;
            for (std::size_t b = 0; b < cands.size(); ++b) {
                if (a == b) continue;
                for (std::size_t i = 0; i < t; ++i) alone = alone && cands[a][i] != cands[b][i];
            }
            isolated += alone ? 1 : 0;
        }
        CHECK(rep.candidates == cands.size());
        CHECK(rep.isolated == isolated);
        CHECK(rep.instance.num_colors() == isolated);
        CHECK(validate_instance(rep.instance).ok());
        CHECK(check_strong_property(rep.instance).status == StrongStatus::Holds);
        CHECK(reference::strong_property_holds(rep.instance));
        nonempty += isolated > 0 ? 1 : 0;
    }
    CHECK(nonempty > 0);
}

TEST_CASE("exact probability probe") {
    const auto P = choose_prime_relaxed(3, 7);
    const auto sys = behrend_from_base_set(P, 3, {0, 1});
    const auto rep = probability_probe(2, 3, sys);
    CHECK(rep.hyperplane_size == 16807);
    CHECK(rep.candidate_count == 686);
    CHECK(rep.candidates_exact());
    CHECK(rep.isolated_count >= 343);
    CHECK(rep.isolated_ok());
    CHECK(rep.characterization_mismatches == 0);

    const auto trivial = probability_probe(2, 3, behrend_from_base_set(P, 3, {0}));
    CHECK(trivial.candidate_count == 343);
}

TEST_CASE("span dimension and components") {
    const TupleLattice lat(3, 3);
    std::vector<std::uint64_t> a, b;
    lat.tuple(0, a);
    CHECK(span_dimension(lat, a, a, 7) == 3);
    const auto same = component_graph(lat, a, a);
    CHECK(same.num_components() == 3);
    CHECK(same.diagonal_symmetric());

    std::size_t sharing = 0;
    for (std::uint64_t k = 1; k < 36; ++k) {
        lat.tuple(k, b);
        bool share = false;
        for (std::size_t i = 0; i < 3; ++i) share = share || a[i] == b[i];
        if (!share) continue;
        ++sharing;
        const auto d = span_dimension(lat, a, b, 7);
        CHECK(d >= 4);
        CHECK(d <= 5);
        CHECK(component_graph(lat, a, b).num_components() >= 6 - d);
    }
    CHECK(sharing > 0);
}

TEST_CASE("counting probe and factorial inequality") {
    const auto rep = counting_probe(3, 3, 0, 7);
    CHECK(rep.ok());
    CHECK(rep.d_out_of_range == 0);
    CHECK(rep.component_bound_failures == 0);
    for (const auto& row : rep.rows) {
        CHECK(row.within_bound);
        CHECK(row.count <= 27 * (std::uint64_t{1} << (2 * (row.d - 3))));
    }
    const auto fc = factorial_inequality_check(12);
    CHECK(fc.failures == 0);
    CHECK(fc.checked == 78);
}
