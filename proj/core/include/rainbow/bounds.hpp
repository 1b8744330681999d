#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/probfield.hpp"

namespace rainbow {

/// Exact binomial coefficient.
[[nodiscard]] BigInt binomial_big(std::size_t n, std::size_t k);

struct BoundEntry {
    std::string name;
    /// Which function the value bounds: "F" (general) or "f" (r-partite).
    std::string target;
    BigInt value;
    std::string formula;
};

struct BoundsReport {
    std::size_t r = 0;
    std::size_t t = 0;
    /// Every applicable construction count.
    std::vector<BoundEntry> lower;
    BoundEntry best_lower_F;
    BoundEntry best_lower_f;
    BoundEntry upper_F;
    BoundEntry upper_f;
    /// (tr+t)^r: N at or above this always admits a rainbow matching.
    BoundEntry threshold;
    /// (r+1)^r.
    BigInt C_r;
    /// (3r)^{-r}.
    BigRational c_r;
    /// c_r t^r and C_r t^r.
    BigRational asymptotic_lower;
    BigInt asymptotic_upper;
    /// f(2,t) = 2t-2 when r = 2.
    std::optional<BigInt> exact_f;
};

/// Requires r >= 2 and t >= 2.
[[nodiscard]] BoundsReport bounds_report(std::size_t r, std::size_t t);

[[nodiscard]] nlohmann::ordered_json to_json(const BoundsReport& rep);

/// Plain-text table.
[[nodiscard]] std::string format_table(const BoundsReport& rep);

} // namespace rainbow
