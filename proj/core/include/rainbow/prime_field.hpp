#pragma once

#include <cstdint>
#include <vector>

namespace rainbow {

__extension__ typedef unsigned __int128 uint128;

[[nodiscard]] std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
[[nodiscard]] std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept;

/// Deterministic Miller-Rabin for all 64-bit inputs.
[[nodiscard]] bool is_prime_u64(std::uint64_t n) noexcept;

/// Smallest prime >= n. Throws std::overflow_error past 2^64.
[[nodiscard]] std::uint64_t next_prime(std::uint64_t n);

/// Arithmetic in F_p for a prime p < 2^63. Elements are canonical residues.
class PrimeField {
public:
    using Elem = std::uint64_t;

    /// Throws DomainError when p is not prime.
    explicit PrimeField(std::uint64_t p);

    [[nodiscard]] std::uint64_t modulus() const noexcept { return p_; }
    [[nodiscard]] Elem add(Elem a, Elem b) const noexcept {
        const Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    [[nodiscard]] Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    [[nodiscard]] Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept { return mul_mod(a, b, p_); }
    [[nodiscard]] Elem pow(Elem a, std::uint64_t e) const noexcept { return pow_mod(a, e, p_); }
    /// Inverse of a nonzero element.
    [[nodiscard]] Elem inv(Elem a) const;
    [[nodiscard]] Elem from_int(std::int64_t v) const noexcept;

    /// Rank of a dense row-major matrix (rows x cols) by Gaussian elimination.
    [[nodiscard]] std::size_t rank(std::vector<std::vector<Elem>> rows) const;

    /// Determinant of a square matrix.
    [[nodiscard]] Elem determinant(std::vector<std::vector<Elem>> m) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint64_t p_;
};

} // namespace rainbow
