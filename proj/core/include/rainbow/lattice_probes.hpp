#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rainbow/probfield.hpp"

namespace rainbow {

/// Rank over F_P of the 2t x tr matrix with rows z_1..z_t, z'_1..z'_t.
[[nodiscard]] std::size_t span_dimension(const TupleLattice& lat, const std::vector<std::uint64_t>& a,
                                         const std::vector<std::uint64_t>& b, std::uint64_t P);

/// Bipartite graph with left i ~ right j when z_i and z'_j share a vertex.
struct ComponentGraph {
    std::size_t t = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    /// Left and right index sets of each component, ordered by smallest left index.
    std::vector<std::vector<std::size_t>> left;
    std::vector<std::vector<std::size_t>> right;

    [[nodiscard]] std::size_t num_components() const noexcept { return left.size(); }
    /// Every component has equal left and right index sets.
    [[nodiscard]] bool diagonal_symmetric() const;
};

[[nodiscard]] ComponentGraph component_graph(const TupleLattice& lat, const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b);

struct DimensionRow {
    std::size_t d = 0;
    std::uint64_t count = 0;
    /// t^t (t-1)!^{(r-1)(d-t)/(t-2)}, compared as count^{t-2} <= t^{t(t-2)} (t-1)!^{(r-1)(d-t)}.
    bool within_bound = true;
    double bound = 0;
};

struct CountingProbeReport {
    std::size_t r = 0, t = 0;
    std::uint64_t P = 0;
    std::uint64_t fixed_index = 0;
    /// Tuples z' != z sharing at least one coordinate with z.
    std::uint64_t sharing = 0;
    std::vector<DimensionRow> rows;
    std::uint64_t d_out_of_range = 0;
    std::uint64_t component_bound_failures = 0;
    std::uint64_t component_equality = 0;
    std::uint64_t asymmetric_components = 0;
    /// Tuples per component partition, against (prod |I_k|!)^{r-1}.
    std::uint64_t partition_classes = 0;
    std::uint64_t partition_bound_failures = 0;

    [[nodiscard]] bool ok() const;
};

/// Enumerates all lattice tuples sharing a coordinate with tuple `fixed_index` and
/// tallies them by span dimension and component structure.
[[nodiscard]] CountingProbeReport counting_probe(std::size_t r, std::size_t t, std::uint64_t fixed_index, std::uint64_t P,
                                                 std::uint64_t lattice_cap = 5'000'000);

struct FactorialInequalityReport {
    std::size_t max_b = 0;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
};

/// a!^{b-1} <= b!^{a-1} for 1 <= a <= b <= max_b.
[[nodiscard]] FactorialInequalityReport factorial_inequality_check(std::size_t max_b = 12);

} // namespace rainbow
