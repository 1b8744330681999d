#include <random>
#include <set>

#include "doctest.h"
#include "rainbow/constructions.hpp"
#include "rainbow/multilinear.hpp"
#include "rainbow/search.hpp"
#include "repro.hpp"

using namespace rainbow;

namespace {

const PrimeField kField(kMultilinearModulus);

void check_found(const TupleFamily& fam, const PhiOracle& phi, const MultilinearResult& res) {
    REQUIRE(res.status == MultilinearStatus::Found);
    REQUIRE(res.indices.size() == fam.t);
    CHECK(std::set<std::size_t>(res.indices.begin(), res.indices.end()).size() == fam.t);
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < fam.t; ++i) ids.push_back(fam.tuples[res.indices[i]][res.choices[i]]);
    CHECK(phi.eval(ids) != 0);
}

} // namespace

TEST_CASE("forms are multilinear") {
    CHECK(spot_check_multilinear(kField, diagonal_form(kField, 3, 4), 20, 1));
    CHECK(spot_check_multilinear(kField, random_form(kField, 2, 5, 9), 20, 2));
    CHECK(spot_check_multilinear(kField, random_form(kField, 3, 3, 4), 20, 3));
    MultilinearForm sq{2, 2, [](std::span<const FieldVector> xs) {
                           return kField.mul(kField.mul(xs[0].coords[0], xs[0].coords[0]), xs[1].coords[0]);
                       }};
    CHECK_FALSE(spot_check_multilinear(kField, sq, 20, 4));

    const auto e0 = FieldVector::basis(3, 0);
    const auto e1 = FieldVector::basis(3, 1);
    CHECK(combine(kField, 2, e0, 3, e1).coords == std::vector<std::uint64_t>{2, 3, 0});
}

TEST_CASE("tightness families are exhausted") {
    for (std::size_t t : {2, 3})
        for (std::size_t dim : {2, 3, 4}) {
            const auto prob = tightness_family(t, dim);
            CHECK(prob.family.size() == (t - 1) * dim);
            CHECK(BigInt(prob.family.size()) == prob.family.threshold());
            check_tuple_family(prob.family, prob.phi);
            const auto res = multilinear_rainbow_find(prob.family, prob.phi);
            CHECK(res.status == MultilinearStatus::Exhausted);
            CHECK_FALSE(res.budget_hit);
        }
}

TEST_CASE("one extra tuple beyond the tightness family is found") {
    auto prob = tightness_family(2, 2);
    const std::size_t id = prob.family.elements.size();
    prob.family.elements.push_back(FieldVector{{1, 1}});
    prob.family.tuples.push_back({id, id});
    prob.phi = explicit_oracle(kField, diagonal_form(kField, 2, 2), prob.family);
    check_tuple_family(prob.family, prob.phi);
    check_found(prob.family, prob.phi, multilinear_rainbow_find(prob.family, prob.phi));
}

TEST_CASE("a single tuple with t > 1 is exhausted") {
    auto prob = tightness_family(2, 2);
    prob.family.tuples.resize(1);
    CHECK(multilinear_rainbow_find(prob.family, prob.phi).status == MultilinearStatus::Exhausted);
}

TEST_CASE("random families above the threshold are found") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t t = 2 + seed % 2;
        const std::size_t dim = 1 + seed % 5;
        const auto prob = random_family(t, dim, (t - 1) * dim + 1, seed);
        check_tuple_family(prob.family, prob.phi);
        const auto res = multilinear_rainbow_find(prob.family, prob.phi);
        check_found(prob.family, prob.phi, res);
    }
}

TEST_CASE("evaluation budget") {
    const auto prob = random_family(3, 4, 40, 5);
    MultilinearOptions opts;
    opts.max_evaluations = 1;
    const auto res = multilinear_rainbow_find(prob.family, prob.phi, opts);
    if (res.status == MultilinearStatus::Exhausted) CHECK(res.budget_hit);
}

TEST_CASE("general position") {
    const auto vs = general_position_vectors(8, 4, 1);
    CHECK(vs.size() == 8);
    CHECK(in_general_position(vs, kField));
    CHECK(general_position_vectors(4, 4, 2).size() == 4);

    GeneralPositionOptions tiny;
    tiny.q = 2;
    tiny.retries = 4;
    CHECK_THROWS_AS((void)general_position_vectors(12, 3, 3, tiny), GeneralPositionError);

    const PrimeField f7(7);
    std::vector<FieldVector> dependent{FieldVector{{1, 0}}, FieldVector{{2, 0}}, FieldVector{{0, 1}}};
    CHECK_FALSE(in_general_position(dependent, f7));
}

TEST_CASE("wedge oracle is nonzero exactly on disjoint edges") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 20; ++round) {
        const bool partite = round % 2 == 1;
        const Instance inst = partite ? repro::random_partite_matchings(2, 2, 3, 4, rng)
                                      : repro::random_matchings(2, 2, 6, 4, rng);
        const auto setup = wedge_phi_matching(inst, static_cast<std::uint64_t>(round));
        CHECK(setup.partite == partite);
        const std::size_t M = setup.edges.size();
        for (std::size_t a = 0; a < M; ++a)
            for (std::size_t b = 0; b < M; ++b) {
                const std::vector<std::size_t> ids{a, b};
                const bool disjoint = setup.edges[a].disjoint(setup.edges[b]);
                CHECK((setup.phi.eval(ids) != 0) == disjoint);
            }
        CHECK(setup.phi.linearity_probe(3));
        for (const auto& tup : setup.family.tuples) {
            CHECK(tup.size() == 2);
            CHECK(setup.phi.eval(tup) != 0);
        }
    }

    const auto inst3 = repro::random_matchings(2, 3, 7, 3, rng);
    const auto s3 = wedge_phi_matching(inst3, 1);
    std::vector<std::size_t> ids;
    for (std::size_t a = 0; a < s3.edges.size(); ++a)
        for (std::size_t b = 0; b < s3.edges.size(); ++b)
            for (std::size_t c = 0; c < s3.edges.size(); ++c) {
                const bool disjoint = s3.edges[a].disjoint(s3.edges[b]) && s3.edges[a].disjoint(s3.edges[c]) &&
                                      s3.edges[b].disjoint(s3.edges[c]);
                ids = {a, b, c};
                CHECK((s3.phi.eval(ids) != 0) == disjoint);
            }
}

TEST_CASE("algebraic path") {
    const auto t2p = t2_partite_construction(3);
    const auto setup = wedge_phi_matching(t2p);
    CHECK(multilinear_rainbow_find(setup.family, setup.phi).status == MultilinearStatus::Exhausted);
    CHECK(find_rainbow(t2p, 2).none());

    std::mt19937_64 rng(4);
    for (int round = 0; round < 10; ++round) {
        const auto inst = repro::random_partite_matchings(2, 2, 3, 9, rng);
        const auto out = rainbow_via_multilinear(inst, {}, static_cast<std::uint64_t>(round));
        CHECK(out.partite);
        CHECK(out.partite_threshold == 4);
        CHECK(out.dim == 4);
        REQUIRE(out.outcome.found());
        CHECK(check_certificate(inst, *out.outcome.certificate));
    }

    Instance k22;
    k22.r = 2;
    k22.t = 2;
    k22.num_vertices = 4;
    k22.partition = Partition{{VertexSet{0, 1}, VertexSet{2, 3}}};
    k22.matchings = {Matching{{0, 2}, {1, 3}}, Matching{{0, 3}, {1, 2}}};
    CHECK(rainbow_via_multilinear(k22).outcome.status == SearchStatus::Indeterminate);
    CHECK(find_rainbow(k22, 2).none());

    Instance empty;
    empty.r = 2;
    empty.t = 2;
    empty.num_vertices = 4;
    CHECK(rainbow_via_multilinear(empty).outcome.status == SearchStatus::Indeterminate);

    const auto general = rainbow_via_multilinear(simple_F_construction(2, 3));
    CHECK(general.general_threshold == 2 * 15);
    CHECK(general.outcome.status != SearchStatus::Found);

    for (int round = 0; round < 40; ++round) {
        const auto inst = repro::random_matchings(2, 2, 5, 1 + rng() % 8, rng);
        const auto alg = rainbow_via_multilinear(inst, {}, static_cast<std::uint64_t>(round));
        if (alg.outcome.found()) {
            CHECK(check_certificate(inst, *alg.outcome.certificate));
            CHECK(find_rainbow(inst, 2).found());
        }
        CHECK(to_json(alg).contains("threshold_general"));
    }
}
