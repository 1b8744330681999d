#include <random>
#include <set>

#include "doctest.h"
#include "rainbow/constructions.hpp"
#include "rainbow/instance.hpp"
#include "rainbow/instance_io.hpp"
#include "rainbow/search.hpp"
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

bool has_rule(const ValidationReport& rep, Violation::Rule rule) {
    for (const auto& v : rep.violations)
        if (v.rule == rule) return true;
    return false;
}

// Plain re-check of a certificate using std::set, sharing nothing with check_certificate.
bool naive_valid(const Instance& inst, const RainbowCertificate& cert) {
    std::set<std::size_t> colors;
    std::set<VertexId> used;
    for (const auto& p : cert.picks) {
        if (p.color >= inst.matchings.size()) return false;
        if (!colors.insert(p.color).second) return false;
        bool member = false;
        for (const auto& e : inst.matchings[p.color].edges) member = member || e.vertices.to_vector() == p.edge.vertices.to_vector();
        if (!member) return false;
        for (VertexId v : p.edge.vertices.to_vector())
            if (!used.insert(v).second) return false;
    }
    return true;
}

} // namespace

TEST_CASE("vertex sets: inline and spilled storage") {
    VertexSet a{1, 5, 64, 127};
    CHECK(a.size() == 4);
    CHECK(a.contains(64));
    CHECK_FALSE(a.contains(63));
    CHECK(a.min() == 1);
    CHECK(a.bound() == 128);

    VertexSet big{3, 200, 400};
    CHECK(big.size() == 3);
    CHECK(big.contains(400));
    CHECK(big.intersects(VertexSet{400}));
    CHECK_FALSE(big.intersects(a));
    big.erase(400);
    big.erase(200);
    CHECK(big == VertexSet{3});
    CHECK(big.words().size() == 1);

    CHECK((VertexSet{0, 2} < VertexSet{0, 3}));
    CHECK((VertexSet{0, 2} < VertexSet{1}));
    CHECK((VertexSet{0} < VertexSet{0, 1}));
    CHECK((a | big).size() == 5);
    CHECK((a - VertexSet{1, 5}).to_vector() == std::vector<VertexId>{64, 127});
}

TEST_CASE("validation of K4 and broken variants") {
    CHECK(validate_instance(k4()).ok());

    auto bad = k4();
    bad.matchings[0] = Matching{{0, 1}, {0, 1}};
    auto rep = validate_instance(bad);
    CHECK_FALSE(rep.ok());
    CHECK(has_rule(rep, Violation::Rule::EdgesNotDisjoint));
    CHECK(rep.violations.front().matching == 0);

    Instance part;
    part.r = 2;
    part.t = 2;
    part.num_vertices = 4;
    part.partition = Partition{{VertexSet{0, 1}, VertexSet{2, 3}}};
    part.matchings = {Matching{{0, 1}, {2, 3}}};
    CHECK(has_rule(validate_instance(part), Violation::Rule::EdgeNotTransversal));

    auto range = k4();
    range.matchings[1] = Matching{{0, 4}, {1, 3}};
    CHECK(has_rule(validate_instance(range), Violation::Rule::VertexOutOfRange));

    auto arity = k4();
    arity.matchings[2] = Matching{{0, 3, 1}, {2}};
    CHECK(has_rule(validate_instance(arity), Violation::Rule::EdgeArity));

    auto size = k4();
    size.matchings[2] = Matching{{0, 3}};
    CHECK(has_rule(validate_instance(size), Violation::Rule::MatchingSize));

    auto dup = k4();
    dup.matchings.push_back(dup.matchings[0]);
    CHECK(validate_instance(dup).ok());
}

TEST_CASE("certificates on K4") {
    const auto inst = k4();
    CHECK_FALSE(check_certificate(inst, {{{0, Edge{0, 1}}, {2, Edge{2, 3}}}}));
    CHECK_FALSE(check_certificate(inst, {{{0, Edge{0, 1}}, {1, Edge{2, 3}}}}));
    CHECK_FALSE(check_certificate(inst, {{{0, Edge{0, 1}}, {0, Edge{2, 3}}}}));
    CHECK_FALSE(check_certificate(inst, {{{5, Edge{0, 1}}}}));
    CHECK(check_certificate(inst, {{{0, Edge{0, 1}}}}));
    CHECK(check_certificate(inst, {}));
}

TEST_CASE("no size-3 certificate of simple-F(2,3) passes") {
    const auto inst = simple_F_construction(2, 3);
    REQUIRE(inst.num_colors() == 4);
    std::size_t tried = 0;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t c = 0; c < 4; ++c)
                for (const auto& ea : inst.matchings[a].edges)
                    for (const auto& eb : inst.matchings[b].edges)
                        for (const auto& ec : inst.matchings[c].edges) {
                            RainbowCertificate cert{{{a, ea}, {b, eb}, {c, ec}}};
                            CHECK_FALSE(check_certificate(inst, cert));
                            ++tried;
                        }
    CHECK(tried == 64 * 27);
}

TEST_CASE("check_certificate agrees with a naive checker on random picks") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        auto inst = repro::random_matchings(2, 3, 8, 5, rng);
        RainbowCertificate cert;
        const std::size_t s = 1 + rng() % 3;
        for (std::size_t i = 0; i < s; ++i) {
            const std::size_t c = rng() % inst.num_colors();
            const auto& edges = inst.matchings[c].edges;
            Edge e = edges[rng() % edges.size()];
            if (rng() % 7 == 0) e = Edge{static_cast<VertexId>(rng() % 8), static_cast<VertexId>(8 + rng() % 2)};
            cert.picks.push_back({c, e});
        }
        CHECK(static_cast<bool>(check_certificate(inst, cert)) == naive_valid(inst, cert));
    }
}

TEST_CASE("encode/decode round trip and canonical order") {
    auto inst = k4();
    inst.matchings[0] = Matching{{3, 2}, {1, 0}};
    inst.metadata["generator"] = "k4";
    const auto text = encode(inst);
    const auto back = decode(text);
    auto canon = inst;
    canon.canonicalize();
    CHECK(back == canon);
    CHECK(encode(back) == text);
    CHECK(text.find("\"r\"") < text.find("\"t\""));
    CHECK(text.find("\"partition\"") < text.find("\"matchings\""));
    CHECK(text.find("\"matchings\"") < text.find("\"metadata\""));

    auto swapped = k4();
    std::swap(swapped.matchings[0], swapped.matchings[1]);
    CHECK_FALSE(decode(encode(swapped)) == decode(encode(k4())));

    const auto part = fixed_r_construction(3, 6);
    CHECK(decode(encode(part)) == part);
}

TEST_CASE("decode rejects malformed documents") {
    CHECK_THROWS_AS((void)decode("{\"r\": 2"), DecodeError);
    CHECK_THROWS_AS((void)decode(R"({"r":2,"t":1,"num_vertices":2,"partition":null,"matchings":[[[0,2]]],"metadata":{}})"),
                    DecodeError);
    CHECK_THROWS_AS((void)decode(R"({"r":2,"t":1,"num_vertices":2,"partition":null,"matchings":[[[0,1.5]]],"metadata":{}})"),
                    DecodeError);
    CHECK_THROWS_AS((void)decode(R"({"t":1,"num_vertices":2,"partition":null,"matchings":[],"metadata":{}})"), DecodeError);
    try {
        (void)decode(R"({"r":2,"t":1,"num_vertices":2,"partition":null,"matchings":[[[0,2]]],"metadata":{}})");
    } catch (const DecodeError& e) {
        CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }
}
