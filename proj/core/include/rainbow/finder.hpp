#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/instance.hpp"
#include "rainbow/probfield.hpp"
#include "rainbow/search.hpp"

namespace rainbow {

/// |petal| * base^core_size >= family, without overflow.
[[nodiscard]] bool eq_spread(std::uint64_t petal, std::uint64_t family, std::uint64_t base, std::size_t core_size) noexcept;

struct SpreadStep {
    VertexSet core;
    /// Edges of the current family containing the core, in family order.
    std::vector<Edge> petals;
    /// |F_k| when the step was taken.
    std::uint64_t family_size = 0;
};

struct SpreadDecomposition {
    std::uint64_t base = 0;
    /// base^r.
    BigInt threshold;
    std::vector<SpreadStep> steps;
    std::vector<Edge> residual;

    /// Index of the step whose petal family holds e.
    [[nodiscard]] std::optional<std::size_t> step_of(const Edge& e) const;
    [[nodiscard]] bool in_residual(const Edge& e) const;
};

/// Peels maximal spread cores (greedy single-vertex extension from the empty
/// set, largest petal family first, lowest vertex on ties) off the distinct
/// edge family until at most (tr+t)^r edges remain.
[[nodiscard]] SpreadDecomposition spread_decompose(const Instance& inst);

struct DollarReport {
    /// Money per color: each residual edge splits one unit equally among its colors.
    std::vector<BigRational> money;
    BigRational total;
    std::size_t color = 0;
    /// Edges of the chosen matching, residual members first.
    std::vector<Edge> ordered_edges;
    std::size_t m = 0;
    /// Whether the chosen color received at most one unit.
    bool within_one = false;
};

/// Smallest-index color receiving at most one unit; below the threshold, when no
/// color qualifies, the poorest color (lowest index on ties) with within_one = false.
[[nodiscard]] DollarReport dollar_select(const SpreadDecomposition& dec, const Instance& inst);

/// Number of colors containing each edge.
[[nodiscard]] std::size_t edge_degree(const Instance& inst, const Edge& e);

/// Distinct colors i_1..i_m with ordered_edges[h] in M_{i_h}, by augmenting paths.
/// Returns nullopt when no assignment exists; throws std::logic_error if that
/// happens although the chosen color received at most one unit.
[[nodiscard]] std::optional<std::vector<std::size_t>> hall_assign(const DollarReport& rep, const Instance& inst);

struct AugmentResult {
    std::optional<RainbowCertificate> certificate;
    /// 1-based position h of the first edge that could not be replaced.
    std::optional<std::size_t> failed_at;
};

/// Replaces e*_{m+1}..e*_t one at a time by first-fit petal edges with unused colors.
[[nodiscard]] AugmentResult augment(const DollarReport& rep, const std::vector<std::size_t>& colors,
                                    const SpreadDecomposition& dec, const Instance& inst);

enum class FinderPath { Constructive, Fallback };

[[nodiscard]] std::string to_string(FinderPath p);

struct ConstructiveOutcome {
    SearchOutcome outcome;
    FinderPath path = FinderPath::Fallback;
    /// N >= (tr+t)^r.
    bool above_threshold = false;
    std::size_t steps = 0;
    std::size_t residual = 0;
    std::size_t chosen_color = 0;
    std::size_t m = 0;
    /// Why the constructive stage gave up, when it did.
    std::string note;
};

[[nodiscard]] nlohmann::ordered_json to_json(const ConstructiveOutcome& out);

/// Decompose, pay, assign and augment; on failure fall back to find_rainbow(inst, t).
[[nodiscard]] ConstructiveOutcome find_rainbow_constructive(const Instance& inst, const SearchBudget& budget = {});

} // namespace rainbow
