#pragma once

#include <cstdint>
#include <vector>

#include "rainbow/instance.hpp"
#include "rainbow/search.hpp"

namespace rainbow {

/// One r-tuple over the alphabet {1..t-r} ∪ {a_1..a_r}. Plain symbols are
/// stored as 1..t-r, a_h as -(h).
struct ShiftTuple {
    std::vector<int> entries;

    /// Cyclic forward shift applied j times: (x_{j+1}, ..., x_r, x_1, ..., x_j).
    [[nodiscard]] ShiftTuple shifted(std::size_t j) const;
    [[nodiscard]] static int a(std::size_t h) { return -static_cast<int>(h); }
    [[nodiscard]] static bool is_a(int s) { return s < 0; }
};

/// Maps a symbol to its local index inside a part of size t:
/// 1..t-r -> 0..t-r-1 and a_h -> t-r+h-1.
[[nodiscard]] std::size_t fixed_r_local_index(int symbol, std::size_t r, std::size_t t);

/// The t tuples of the matching indexed by (x_1..x_r), in rule order.
[[nodiscard]] std::vector<ShiftTuple> fixed_r_tuples(const std::vector<int>& x, std::size_t t);

/// The blocks X_1..X_r of {1..t-r}: consecutive, size floor(t/r)-1, remainder in X_r.
[[nodiscard]] std::vector<std::vector<int>> fixed_r_blocks(std::size_t r, std::size_t t);

/// r-partite family on tr vertices, one matching per (x_1..x_r) in X_1 x ... x X_r.
/// Part p holds vertices p*t .. p*t+t-1.
[[nodiscard]] Instance fixed_r_construction(std::size_t r, std::size_t t);

/// Perfect matchings M_X on tr vertices for even r; odd r lifts the r-1 family.
/// Labels 1..tr-2 are vertices 0..tr-3, a = tr-2 and a' = tr-1.
[[nodiscard]] Instance simple_F_construction(std::size_t r, std::size_t t);

/// r-partite perfect matchings for odd r; even r lifts the r-1 family.
/// The last part holds a_1, a_2, b_1..b_{t-2} at local indices 0, 1, 2, ...
[[nodiscard]] Instance simple_f_construction(std::size_t r, std::size_t t);

/// Adds t new vertices and appends vertex n+i to edge i (canonical order) of every matching.
/// A partite input gains the new vertices as an extra part.
[[nodiscard]] Instance lift_uniformity(const Instance& inst, std::size_t target_r);

/// Complementary pairs {S, [2r] \ S} of r-subsets, S containing vertex 0, in lexicographic order.
[[nodiscard]] Instance t2_complete_construction(std::size_t r);

/// Parts {2p, 2p+1}; edges through vertex 0 paired with their complements.
[[nodiscard]] Instance t2_partite_construction(std::size_t r);

/// tuples[j][i] is the 0/1 vector x_{i,j} over [n] as a bit mask (n <= 64).
struct SumTupleSystem {
    std::size_t n = 0;
    std::size_t t = 0;
    std::vector<std::vector<std::uint64_t>> tuples;
    /// True when the generator stopped on its budget.
    bool truncated = false;
    std::uint64_t nodes_visited = 0;
};

struct SumTupleVerdict {
    bool ok = false;
    std::string reason;
    explicit operator bool() const noexcept { return ok; }
};

/// Checks row weights n/t, the per-tuple cover, and that no mixed index choice covers [n].
[[nodiscard]] SumTupleVerdict verify_sum_tuples(const SumTupleSystem& sys);

/// Greedy system over ordered partitions of [n] into t blocks in lexicographic order.
/// The budget caps candidate checks; the result is always fully verified.
[[nodiscard]] SumTupleSystem generate_sum_tuples(std::size_t t, std::size_t n, const SearchBudget& budget = {});

/// Instance on n+t vertices: vertex n+i is a_i, matching j has edges {a_i} ∪ X_{i,j}.
[[nodiscard]] Instance tuples_to_matchings_F(const SumTupleSystem& sys);

} // namespace rainbow
