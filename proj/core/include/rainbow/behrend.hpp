#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/probfield.hpp"

namespace rainbow {

enum class BehrendMethod { Auto, Exhaustive, Greedy, Sphere, Explicit };

[[nodiscard]] std::string to_string(BehrendMethod m);
[[nodiscard]] BehrendMethod behrend_method_from_string(const std::string& s);

struct BehrendOptions {
    BehrendMethod method = BehrendMethod::Auto;
    /// Sphere digit base and digit count; 0 picks them automatically.
    std::uint64_t sphere_base = 0;
    std::size_t sphere_digits = 0;
    /// Greedy completion of a sphere set when the value range allows it.
    bool sphere_complete = true;
    /// Node cap of the exhaustive maximal search.
    std::uint64_t exhaustive_budget = 20'000'000;
};

/// Tuples (y_{1,h}, ..., y_{t,h}) over F_P built from a base set A:
/// y_{i,h} = a_h for i < t and y_{t,h} = -(t-1) a_h mod P.
class BehrendSystem {
public:
    BehrendSystem() = default;
    BehrendSystem(std::uint64_t P, std::size_t t, std::vector<std::uint64_t> base_set, BehrendMethod method, bool optimal);

    [[nodiscard]] std::uint64_t P() const noexcept { return P_; }
    [[nodiscard]] std::size_t t() const noexcept { return t_; }
    [[nodiscard]] std::size_t R() const noexcept { return base_.size(); }
    [[nodiscard]] const std::vector<std::uint64_t>& base_set() const noexcept { return base_; }
    /// y_{i,h} with 0-based i and h.
    [[nodiscard]] std::uint64_t y(std::size_t i, std::size_t h) const noexcept { return y_[i][h]; }
    /// h with y_{i,h} = v, or -1.
    [[nodiscard]] std::int64_t index_in_row(std::size_t i, std::uint64_t v) const;
    [[nodiscard]] BehrendMethod method() const noexcept { return method_; }
    /// True when the exhaustive search proved |A| maximal for the value range.
    [[nodiscard]] bool optimal() const noexcept { return optimal_; }
    /// P exp(-12 sqrt(ln P ln t)); reported for comparison only.
    [[nodiscard]] double asymptotic_floor() const;

private:
    std::uint64_t P_ = 0;
    std::size_t t_ = 0;
    std::vector<std::uint64_t> base_;
    std::vector<std::vector<std::uint64_t>> y_;
    std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> lookup_;
    BehrendMethod method_ = BehrendMethod::Explicit;
    bool optimal_ = false;
};

/// Largest value v with (t-1) v < P.
[[nodiscard]] std::uint64_t behrend_value_limit(std::uint64_t P, std::size_t t);

/// True when no x_1 + ... + x_{t-1} = (t-1) x_t has a solution in A other than all equal.
[[nodiscard]] bool centroid_free(const std::vector<std::uint64_t>& A, std::size_t t);

[[nodiscard]] BehrendSystem behrend_system(const PrimeModulus& P, std::size_t t, const BehrendOptions& opt = {});

/// System for an explicit base set; throws DomainError when A violates the guard or is not centroid-free.
[[nodiscard]] BehrendSystem behrend_from_base_set(const PrimeModulus& P, std::size_t t, std::vector<std::uint64_t> A);

struct BehrendVerdict {
    bool ok = false;
    /// "exhaustive" (all R^t index tuples) or "guard" (no-wraparound plus centroid check).
    std::string how;
    std::string reason;
    explicit operator bool() const noexcept { return ok; }
};

/// Checks the iff property: exhaustively when R <= 60 and R^t <= 5e7, otherwise
/// through the no-wraparound guard and a centroid check of A.
[[nodiscard]] BehrendVerdict verify_behrend(const BehrendSystem& sys);

} // namespace rainbow
