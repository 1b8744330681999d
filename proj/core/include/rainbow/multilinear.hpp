#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/instance.hpp"
#include "rainbow/prime_field.hpp"
#include "rainbow/probfield.hpp"
#include "rainbow/search.hpp"

namespace rainbow {

/// 2^61 - 1.
inline constexpr std::uint64_t kMultilinearModulus = (std::uint64_t{1} << 61U) - 1;

struct FieldVector {
    std::vector<std::uint64_t> coords;

    [[nodiscard]] std::size_t dim() const noexcept { return coords.size(); }
    [[nodiscard]] static FieldVector basis(std::size_t dim, std::size_t s);
    friend bool operator==(const FieldVector&, const FieldVector&) = default;
};

/// a*u + b*v.
[[nodiscard]] FieldVector combine(const PrimeField& f, std::uint64_t a, const FieldVector& u, std::uint64_t b,
                                  const FieldVector& v);

class GeneralPositionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A multilinear form given on explicit coordinates.
struct MultilinearForm {
    std::size_t t = 0;
    std::size_t dim = 0;
    std::function<std::uint64_t(std::span<const FieldVector>)> eval;
};

/// sum_s prod_i x_i^(s).
[[nodiscard]] MultilinearForm diagonal_form(const PrimeField& f, std::size_t t, std::size_t dim);

/// sum over s_1..s_t of c[s_1..s_t] * prod_i x_i^(s_i) with random coefficients.
[[nodiscard]] MultilinearForm random_form(const PrimeField& f, std::size_t t, std::size_t dim, std::uint64_t seed);

/// Checks phi(.., a u + b v, ..) = a phi(.., u, ..) + b phi(.., v, ..) at random points.
[[nodiscard]] bool spot_check_multilinear(const PrimeField& f, const MultilinearForm& form, std::size_t probes,
                                          std::uint64_t seed);

/// phi evaluated on element ids of a TupleFamily.
struct PhiOracle {
    std::uint64_t modulus = kMultilinearModulus;
    std::size_t t = 0;
    std::function<std::uint64_t(std::span<const std::size_t>)> eval;
    /// Linearity certificate: spot-checks the underlying form when called.
    std::function<bool(std::uint64_t seed)> linearity_probe;
};

struct TupleFamily {
    std::size_t t = 0;
    /// Ambient dimension, possibly far too large to materialize.
    BigInt dim;
    /// Explicit coordinates per element id; empty when elements are abstract.
    std::vector<FieldVector> elements;
    /// N tuples of element ids.
    std::vector<std::vector<std::size_t>> tuples;

    [[nodiscard]] std::size_t size() const noexcept { return tuples.size(); }
    /// (t-1) * dim.
    [[nodiscard]] BigInt threshold() const { return BigInt(t - 1) * dim; }
};

/// Checks that every tuple has t entries and phi(tuple) != 0.
void check_tuple_family(const TupleFamily& fam, const PhiOracle& phi);

/// Oracle for a form on an explicit family.
[[nodiscard]] PhiOracle explicit_oracle(const PrimeField& f, MultilinearForm form, const TupleFamily& fam);

struct ExplicitProblem {
    TupleFamily family;
    PhiOracle phi;
};

/// t-1 copies of (e_s,...,e_s) for each basis vector, with the diagonal form.
[[nodiscard]] ExplicitProblem tightness_family(std::size_t t, std::size_t dim, std::uint64_t q = kMultilinearModulus);

/// N random tuples under a random form, resampled until phi != 0.
[[nodiscard]] ExplicitProblem random_family(std::size_t t, std::size_t dim, std::size_t N, std::uint64_t seed,
                                            std::uint64_t q = kMultilinearModulus);

enum class MultilinearStatus { Found, Exhausted };

[[nodiscard]] std::string to_string(MultilinearStatus s);

struct MultilinearOptions {
    std::uint64_t max_evaluations = std::numeric_limits<std::uint64_t>::max();
    /// Cross-check failed rewrites with a span test when coordinates are explicit.
    bool verify_span = true;
};

struct MultilinearResult {
    MultilinearStatus status = MultilinearStatus::Exhausted;
    /// Distinct tuple indices j_1..j_t.
    std::vector<std::size_t> indices;
    /// y_i is entry choices[i] of tuple indices[i].
    std::vector<std::size_t> choices;
    std::uint64_t evaluations = 0;
    std::size_t rewrites = 0;
    std::size_t recursions = 0;
    bool budget_hit = false;
};

/// Inductive search: start from the last tuple repeated t times, trade repeated
/// positions for fresh tuples while phi stays nonzero, and drop to the remaining
/// pool once no trade exists.
[[nodiscard]] MultilinearResult multilinear_rainbow_find(const TupleFamily& fam, const PhiOracle& phi,
                                                         const MultilinearOptions& opts = {});

struct GeneralPositionOptions {
    std::uint64_t q = kMultilinearModulus;
    std::size_t retries = 16;
    /// Check every dim-subset when there are at most this many.
    std::uint64_t exhaustive_limit = 20000;
};

/// M random vectors in F_q^dim; reseeds while some checked dim-subset is singular.
/// Throws GeneralPositionError when the retries run out.
[[nodiscard]] std::vector<FieldVector> general_position_vectors(std::size_t M, std::size_t dim, std::uint64_t seed,
                                                                const GeneralPositionOptions& opts = {});

/// Every dim-subset is linearly independent (exhaustive).
[[nodiscard]] bool in_general_position(const std::vector<FieldVector>& vs, const PrimeField& f);

struct WedgeSetup {
    PhiOracle phi;
    TupleFamily family;
    /// Element id to edge.
    std::vector<Edge> edges;
    bool partite = false;
    std::uint64_t seed = 0;
    std::size_t reseeds = 0;
};

/// Vertex vectors in general position (one t-dim block per part when the instance
/// is partite); phi on t edges is the determinant of their tr vertex vectors.
[[nodiscard]] WedgeSetup wedge_phi_matching(const Instance& inst, std::uint64_t seed = 0,
                                            const GeneralPositionOptions& opts = {});

struct AlgebraicOutcome {
    SearchOutcome outcome;
    bool partite = false;
    BigInt dim;
    /// (t-1) * C(tr, r) and (t-1) * t^r.
    BigInt general_threshold;
    BigInt partite_threshold;
    std::size_t reseeds = 0;
    std::optional<MultilinearStatus> raw;
};

[[nodiscard]] nlohmann::ordered_json to_json(const AlgebraicOutcome& out);

/// Found certificates are verified; Exhausted becomes Indeterminate.
[[nodiscard]] AlgebraicOutcome rainbow_via_multilinear(const Instance& inst, const SearchBudget& budget = {},
                                                       std::uint64_t seed = 0);

} // namespace rainbow
