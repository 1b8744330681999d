#include "rainbow/prime_field.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "rainbow/instance.hpp"

namespace rainbow {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept {
    std::uint64_t result = 1 % m;
    a %= m;
    while (e) {
        if (e & 1U) result = mul_mod(result, a, m);
        a = mul_mod(a, a, m);
        e >>= 1U;
    }
    return result;
}

bool is_prime_u64(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    // This witness set is exact below 3.3e24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n) {
    if (n <= 2) return 2;
    for (std::uint64_t c = n; c >= n; ++c)
        if (is_prime_u64(c)) return c;
    throw std::overflow_error("next_prime: no prime below 2^64");
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime_u64(p)) throw DomainError("PrimeField: modulus " + std::to_string(p) + " is not prime");
    if (p >> 63U) throw DomainError("PrimeField: modulus must be below 2^63");
}

PrimeField::Elem PrimeField::inv(Elem a) const {
    if (a % p_ == 0) throw std::domain_error("PrimeField: inverse of zero");
    return pow(a, p_ - 2);
}

PrimeField::Elem PrimeField::from_int(std::int64_t v) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<Elem>(r);
}

std::size_t PrimeField::rank(std::vector<std::vector<Elem>> rows) const {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const Elem inv_p = inv(rows[rank][c]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            const Elem f = mul(rows[i][c], inv_p);
            for (std::size_t k = c; k < cols; ++k) rows[i][k] = sub(rows[i][k], mul(f, rows[rank][k]));
        }
        ++rank;
    }
    return rank;
}

PrimeField::Elem PrimeField::determinant(std::vector<std::vector<Elem>> m) const {
    const std::size_t n = m.size();
    Elem det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = neg(det);
        }
        det = mul(det, m[c][c]);
        const Elem inv_p = inv(m[c][c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            const Elem f = mul(m[i][c], inv_p);
            for (std::size_t k = c; k < n; ++k) m[i][k] = sub(m[i][k], mul(f, m[c][k]));
        }
    }
    return det;
}

} // namespace rainbow
