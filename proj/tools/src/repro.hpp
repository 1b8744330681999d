#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rainbow/instance.hpp"

namespace rainbow::repro {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct ReproOptions {
    unsigned threads = 1;
    std::uint64_t seed = 0;
};

/// Criterion ids run by a suite: constructions, prob, finder, algebraic, probes or all.
/// Throws std::invalid_argument for an unknown suite.
[[nodiscard]] std::vector<int> suite_criteria(const std::string& suite);

[[nodiscard]] CriterionResult run_criterion(int id, const ReproOptions& opts = {});

[[nodiscard]] std::vector<CriterionResult> run_suite(const std::string& suite, const ReproOptions& opts = {});

/// "PASS [1] name: detail (0.01s)".
[[nodiscard]] std::string format_result(const CriterionResult& res);

/// N distinct random size-t matchings of r-edges on n vertices.
[[nodiscard]] Instance random_distinct_matchings(std::size_t r, std::size_t t, std::size_t n, std::size_t N,
                                                 std::mt19937_64& rng);

/// N distinct random perfect-per-part matchings of size t in the complete
/// r-partite hypergraph with parts of size m (m >= t).
[[nodiscard]] Instance random_partite_matchings(std::size_t r, std::size_t t, std::size_t m, std::size_t N,
                                                std::mt19937_64& rng);

/// N random (not necessarily distinct) size-t matchings.
[[nodiscard]] Instance random_matchings(std::size_t r, std::size_t t, std::size_t n, std::size_t N, std::mt19937_64& rng);

} // namespace rainbow::repro
