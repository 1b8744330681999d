#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "rainbow/instance.hpp"

namespace rainbow {

/// Caps for exhaustive searches. Exceeding a cap yields Indeterminate.
struct SearchBudget {
    std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_millis = std::numeric_limits<std::uint64_t>::max();
    unsigned threads = 1;

    static SearchBudget unlimited() { return {}; }
    static SearchBudget nodes(std::uint64_t n) {
        SearchBudget b;
        b.max_nodes = n;
        return b;
    }
};

enum class SearchStatus { Found, NoneExists, Indeterminate };

[[nodiscard]] std::string to_string(SearchStatus s);

struct SearchOutcome {
    SearchStatus status = SearchStatus::Indeterminate;
    std::optional<RainbowCertificate> certificate;
    std::uint64_t nodes_visited = 0;

    [[nodiscard]] bool found() const noexcept { return status == SearchStatus::Found; }
    [[nodiscard]] bool none() const noexcept { return status == SearchStatus::NoneExists; }
};

[[nodiscard]] nlohmann::ordered_json to_json(const SearchOutcome& out);

/// Exhaustive search for a rainbow matching of size `size`.
///
/// Branches on the lowest uncovered vertex when size*r equals the vertex
/// count (every vertex must be covered) and on the color class with the
/// fewest compatible edges otherwise. Identical matchings are merged into
/// classes with multiplicity so permutations of equal colors are never
/// distinguished. Single-threaded runs are deterministic; picks are
/// reported in ascending color order.
[[nodiscard]] SearchOutcome find_rainbow(const Instance& inst, std::size_t size, const SearchBudget& budget = {});

enum class StrongStatus { Holds, Fails, Indeterminate };

[[nodiscard]] std::string to_string(StrongStatus s);

struct StrongOutcome {
    StrongStatus status = StrongStatus::Indeterminate;
    /// Pairwise-disjoint picks whose colors are not all equal.
    std::optional<RainbowCertificate> witness;
    std::uint64_t nodes_visited = 0;
};

[[nodiscard]] nlohmann::ordered_json to_json(const StrongOutcome& out);

/// Holds iff every t pairwise-disjoint edges e_i in M_{j_i} force j_1 = ... = j_t.
[[nodiscard]] StrongOutcome check_strong_property(const Instance& inst, const SearchBudget& budget = {});

struct ExactValueParams {
    std::size_t r = 2;
    std::size_t t = 2;
    std::size_t universe = 4;
    bool partite = false;
    std::size_t multiplicity_cap = 1;
};

struct ExactValueResult {
    /// Complete when the whole candidate space was explored.
    bool complete = false;
    std::size_t n_max = 0;
    Instance witness;
    std::size_t candidate_matchings = 0;
    std::uint64_t nodes_visited = 0;
};

/// Largest multiset of size-t matchings on a fixed universe (each repeated at
/// most `multiplicity_cap` times) with no rainbow matching of size t.
/// In partite mode the universe is split into r consecutive blocks.
[[nodiscard]] ExactValueResult exact_value_search(const ExactValueParams& params, const SearchBudget& budget = {});

/// All size-t matchings of r-edges on [0, universe), canonical and in lexicographic order.
[[nodiscard]] std::vector<Matching> enumerate_matchings(std::size_t r, std::size_t t, std::size_t universe,
                                                        const std::optional<Partition>& partition);

} // namespace rainbow
