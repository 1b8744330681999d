#include "doctest.h"
#include "rainbow/bounds.hpp"
#include "rainbow/instance.hpp"

using namespace rainbow;

namespace {

// Pascal's triangle, independent of binomial_big.
BigInt pascal(std::size_t n, std::size_t k) {
    std::vector<BigInt> row{1};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<BigInt> next(row.size() + 1, 0);
        for (std::size_t j = 0; j < row.size(); ++j) {
            next[j] += row[j];
            next[j + 1] += row[j];
        }
        row = std::move(next);
    }
    return k <= n ? row[k] : BigInt(0);
}

const BoundEntry* find(const BoundsReport& rep, const std::string& name) {
    for (const auto& e : rep.lower)
        if (e.name == name) return &e;
    return nullptr;
}

} // namespace

TEST_CASE("binomials agree with Pascal's triangle") {
    for (std::size_t n = 0; n <= 60; ++n)
        for (std::size_t k = 0; k <= n + 1; ++k) CHECK(binomial_big(n, k) == pascal(n, k));
}

TEST_CASE("bounds at r = 2, t = 3") {
    const auto rep = bounds_report(2, 3);
    CHECK(rep.upper_F.value == 30);
    CHECK(rep.upper_f.value == 18);
    REQUIRE(find(rep, "simple-F"));
    CHECK(find(rep, "simple-F")->value == 4);
    CHECK(rep.threshold.value == 81);
    REQUIRE(rep.exact_f);
    CHECK(*rep.exact_f == 4);
    CHECK(rep.C_r == 9);
    CHECK(rep.c_r == BigRational(1, 36));
}

TEST_CASE("bounds at r = 3, t = 12 and r = 2, t = 2") {
    const auto a = bounds_report(3, 12);
    REQUIRE(find(a, "fixed-r"));
    CHECK(find(a, "fixed-r")->value == 27);
    CHECK(find(a, "simple-f")->value == 132);
    CHECK(a.upper_F.value == 11 * pascal(36, 3));
    CHECK(a.upper_f.value == 11 * BigInt(1728));

    const auto b = bounds_report(2, 2);
    REQUIRE(b.exact_f);
    CHECK(*b.exact_f == 2);
    CHECK(find(b, "t2-complete")->value == 3);
    CHECK(find(b, "t2-partite")->value == 2);
    CHECK(b.best_lower_F.value == 3);
    CHECK(b.best_lower_f.value == 2);
    CHECK(b.upper_F.value == 6);
}

TEST_CASE("large parameters stay exact") {
    const auto rep = bounds_report(20, 30);
    BigInt th = 1;
    for (int i = 0; i < 20; ++i) th *= 630;
    CHECK(rep.threshold.value == th);
    CHECK(rep.upper_F.value == 29 * pascal(600, 20));
    const auto j = to_json(rep);
    CHECK(j["threshold"]["value"].get<std::string>() == th.str());
    CHECK(format_table(rep).find(th.str()) != std::string::npos);
}

TEST_CASE("lower entries never exceed upper bounds where both apply") {
    for (std::size_t r = 2; r <= 6; ++r)
        for (std::size_t t = 2; t <= 14; ++t) {
            const auto rep = bounds_report(r, t);
            for (const auto& e : rep.lower) {
                CHECK(e.value <= rep.upper_F.value);
                if (e.target == "f") CHECK(e.value <= rep.upper_f.value);
            }
        }
    CHECK_THROWS_AS((void)bounds_report(1, 3), DomainError);
}
