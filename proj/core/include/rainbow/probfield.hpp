#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rainbow/instance.hpp"

namespace rainbow {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class PrimeProvenance { AdmissibleWindow, UserSupplied };

struct PrimeModulus {
    std::uint64_t P = 0;
    PrimeProvenance provenance = PrimeProvenance::UserSupplied;
    /// Smallest integer L with L^{t-2} >= (2t^{t+1})^{t-2} (t-1)!^{r-1}; window mode only.
    BigInt lower_bound = 0;
};

[[nodiscard]] std::string to_string(PrimeProvenance p);

/// Smallest admissible integer of the prime window for (r, t), exact.
[[nodiscard]] BigInt window_prime_lower_bound(std::size_t r, std::size_t t);

/// Window mode: smallest prime >= window_prime_lower_bound, refusing above `cap`.
[[nodiscard]] PrimeModulus choose_prime_window(std::size_t r, std::size_t t, std::uint64_t cap = std::uint64_t{1} << 31);

/// Relaxed mode: any prime P >= t.
[[nodiscard]] PrimeModulus choose_prime_relaxed(std::size_t t, std::uint64_t P);

/// Linear map F_P^{len} -> F_P with coefficients summing to 0.
struct Functional {
    std::uint64_t P = 0;
    std::vector<std::uint64_t> coeffs;
    std::uint64_t seed = 0;

    [[nodiscard]] bool kills_all_ones() const;
};

/// First len-1 coefficients uniform in F_P from mt19937_64(seed); the last one
/// is the negated partial sum.
[[nodiscard]] Functional sample_functional(std::uint64_t P, std::size_t len, std::uint64_t seed);

/// The vectors z in {0,1}^{tr} with one 1 per block of t coordinates, and the
/// t-tuples (z_1..z_t) in Z_1 x ... x Z_t summing to the all-ones vector.
///
/// A z-vector is identified by sum_q local_q * t^q, where local_q in [0,t) is the
/// position of its 1 in block q. Tuple k is given by r-1 permutations pi_q
/// (mixed radix, block 1 most significant, permutations in lexicographic order):
/// z_i has local_0 = i and local_q = pi_q(i).
class TupleLattice {
public:
    TupleLattice(std::size_t r, std::size_t t);

    [[nodiscard]] std::size_t r() const noexcept { return r_; }
    [[nodiscard]] std::size_t t() const noexcept { return t_; }
    /// t^r.
    [[nodiscard]] std::uint64_t num_z() const noexcept { return num_z_; }
    /// t!^{r-1} (exact).
    [[nodiscard]] const BigInt& num_tuples() const noexcept { return num_tuples_; }

    [[nodiscard]] std::vector<std::size_t> locals(std::uint64_t z) const;
    /// Index of the slice Z_i containing z.
    [[nodiscard]] std::size_t slice(std::uint64_t z) const noexcept { return static_cast<std::size_t>(z % t_); }
    /// Vertices of the edge of z in the complete r-partite graph with parts q*t .. q*t+t-1.
    [[nodiscard]] VertexSet vertices(std::uint64_t z) const;
    /// f(z) = sum_q c[q*t + local_q].
    [[nodiscard]] std::uint64_t evaluate(const Functional& f, std::uint64_t z) const;

    /// z-ids of tuple `index`; requires the permutation table (t <= 10).
    void tuple(std::uint64_t index, std::vector<std::uint64_t>& out) const;
    /// Index of a tuple given by its z-ids (inverse of tuple()).
    [[nodiscard]] std::uint64_t index_of(const std::vector<std::uint64_t>& zs) const;

private:
    std::size_t r_, t_;
    std::uint64_t num_z_ = 1;
    BigInt num_tuples_;
    std::vector<std::vector<std::size_t>> perms_;
    std::vector<std::uint64_t> pow_t_;
};

class BehrendSystem;

struct PartiteFamilyOptions {
    std::uint64_t lattice_cap = 10'000'000;
};

struct PartiteFamilyReport {
    Instance instance;
    std::uint64_t tuples = 0;
    std::uint64_t candidates = 0;
    std::uint64_t isolated = 0;
    /// t!^{r-1} R / (2 P^{t-1}).
    BigRational expected_floor;
};

/// Candidate and isolated filtering of the tuple lattice under one functional.
/// The emitted instance holds the isolated candidates as perfect matchings.
[[nodiscard]] PartiteFamilyReport build_partite_family(std::size_t r, std::size_t t, const BehrendSystem& sys,
                                                       const Functional& f, const PartiteFamilyOptions& opt = {});

struct ProbabilityProbeReport {
    std::size_t r = 0, t = 0;
    std::uint64_t P = 0, R = 0;
    std::uint64_t hyperplane_size = 0;
    std::uint64_t candidate_count = 0;
    std::uint64_t isolated_count = 0;
    /// hyperplane_size * R / P^{t-1}.
    BigRational expected_candidates;
    /// hyperplane_size * R / (2 P^{t-1}).
    BigRational isolated_floor;
    /// Functionals whose two candidate characterizations disagreed (always 0).
    std::uint64_t characterization_mismatches = 0;

    [[nodiscard]] bool candidates_exact() const { return BigRational(candidate_count) == expected_candidates; }
    [[nodiscard]] bool isolated_ok() const { return BigRational(isolated_count) >= isolated_floor; }
};

/// Enumerates every functional on the sum-zero hyperplane of F_P^{tr} and
/// tallies how often the identity tuple is a candidate and an isolated candidate.
[[nodiscard]] ProbabilityProbeReport probability_probe(std::size_t r, std::size_t t, const BehrendSystem& sys,
                                                       std::uint64_t max_functionals = 50'000'000);

[[nodiscard]] std::string to_string(const BigRational& q);
[[nodiscard]] double to_double(const BigRational& q);

} // namespace rainbow
