#include "rainbow/probfield.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "rainbow/behrend.hpp"
#include "rainbow/prime_field.hpp"

namespace rainbow {

std::string to_string(PrimeProvenance p) { return p == PrimeProvenance::AdmissibleWindow ? "admissible-window" : "user-supplied"; }

std::string to_string(const BigRational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
    return os.str();
}

double to_double(const BigRational& q) { return q.convert_to<double>(); }

namespace {

BigInt factorial(std::size_t n) {
    BigInt f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt ipow(const BigInt& b, std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

BigInt window_prime_lower_bound(std::size_t r, std::size_t t) {
    if (t < 3) throw DomainError("window_prime_lower_bound: t must be at least 3");
    if (r < 1) throw DomainError("window_prime_lower_bound: r must be positive");
    const std::size_t e = t - 2;
    BigInt base = 2 * ipow(BigInt(t), t + 1);
    const BigInt target = ipow(base, e) * ipow(factorial(t - 1), r - 1);
    // Smallest L with L^e >= target, by bisection.
    BigInt lo = 1, hi = 1;
    while (ipow(hi, e) < target) hi *= 2;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (ipow(mid, e) >= target)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

PrimeModulus choose_prime_window(std::size_t r, std::size_t t, std::uint64_t cap) {
    const BigInt lower = window_prime_lower_bound(r, t);
    if (lower > cap)
        throw DomainError("choose_prime: the prime window for (r=" + std::to_string(r) + ", t=" + std::to_string(t) +
                          ") starts at " + lower.str() + ", above the cap " + std::to_string(cap));
    const auto start = lower.convert_to<std::uint64_t>();
    const std::uint64_t P = next_prime(start);
    if (P > cap) throw DomainError("choose_prime: smallest admissible prime exceeds the cap");
    return {P, PrimeProvenance::AdmissibleWindow, lower};
}

PrimeModulus choose_prime_relaxed(std::size_t t, std::uint64_t P) {
    if (!is_prime_u64(P)) throw DomainError("choose_prime: " + std::to_string(P) + " is not prime");
    if (P < t) throw DomainError("choose_prime: P must be at least t");
    return {P, PrimeProvenance::UserSupplied, 0};
}

bool Functional::kills_all_ones() const {
    std::uint64_t s = 0;
    for (auto c : coeffs) s = (s + c) % P;
    return s == 0;
}

Functional sample_functional(std::uint64_t P, std::size_t len, std::uint64_t seed) {
    if (P < 2) throw DomainError("sample_functional: P must be at least 2");
    if (len == 0) throw DomainError("sample_functional: length must be positive");
    Functional f;
    f.P = P;
    f.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, P - 1);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i + 1 < len; ++i) {
        const auto c = dist(rng);
        f.coeffs.push_back(c);
        sum = (sum + c) % P;
    }
    f.coeffs.push_back((P - sum) % P);
    return f;
}

TupleLattice::TupleLattice(std::size_t r, std::size_t t) : r_(r), t_(t) {
    if (r == 0 || t == 0) throw DomainError("TupleLattice: r and t must be positive");
    pow_t_.push_back(1);
    for (std::size_t q = 0; q < r; ++q) {
        if (num_z_ > std::numeric_limits<std::uint64_t>::max() / t) throw DomainError("TupleLattice: t^r overflows");
        num_z_ *= t;
        pow_t_.push_back(num_z_);
    }
    num_tuples_ = ipow(factorial(t), r - 1);
    if (t <= 10) {
        std::vector<std::size_t> p(t);
        std::iota(p.begin(), p.end(), 0);
        do perms_.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
}

std::vector<std::size_t> TupleLattice::locals(std::uint64_t z) const {
    std::vector<std::size_t> out(r_);
    for (std::size_t q = 0; q < r_; ++q) {
        out[q] = static_cast<std::size_t>(z % t_);
        z /= t_;
    }
    return out;
}

VertexSet TupleLattice::vertices(std::uint64_t z) const {
    VertexSet s;
    for (std::size_t q = 0; q < r_; ++q) {
        s.insert(static_cast<VertexId>(q * t_ + z % t_));
        z /= t_;
    }
    return s;
}

std::uint64_t TupleLattice::evaluate(const Functional& f, std::uint64_t z) const {
    std::uint64_t s = 0;
    for (std::size_t q = 0; q < r_; ++q) {
        s += f.coeffs[q * t_ + z % t_];
        if (s >= f.P) s -= f.P;
        z /= t_;
    }
    return s;
}

void TupleLattice::tuple(std::uint64_t index, std::vector<std::uint64_t>& out) const {
    if (perms_.empty()) throw DomainError("TupleLattice: tuple enumeration needs t <= 10");
    out.assign(t_, 0);
    for (std::size_t i = 0; i < t_; ++i) out[i] = i;
    const std::uint64_t radix = perms_.size();
    for (std::size_t q = r_ - 1; q >= 1; --q) {
        const auto& pi = perms_[index % radix];
        index /= radix;
        for (std::size_t i = 0; i < t_; ++i) out[i] += pi[i] * pow_t_[q];
    }
}

std::uint64_t TupleLattice::index_of(const std::vector<std::uint64_t>& zs) const {
    if (zs.size() != t_) throw DomainError("TupleLattice: tuple has the wrong length");
    std::uint64_t index = 0;
    for (std::size_t q = 1; q < r_; ++q) {
        std::vector<std::size_t> pi(t_);
        for (std::size_t i = 0; i < t_; ++i) pi[i] = static_cast<std::size_t>(zs[i] / pow_t_[q] % t_);
        const auto it = std::lower_bound(perms_.begin(), perms_.end(), pi);
        if (it == perms_.end() || *it != pi) throw DomainError("TupleLattice: not a lattice tuple");
        index = index * perms_.size() + static_cast<std::uint64_t>(it - perms_.begin());
    }
    return index;
}

namespace {

/// Candidate status of every lattice tuple under f, checked by both characterizations.
struct CandidateScan {
    std::vector<std::uint64_t> candidates;
    std::vector<std::uint32_t> z_count;
    std::uint64_t mismatches = 0;
};

CandidateScan scan_candidates(const TupleLattice& lat, const BehrendSystem& sys, const Functional& f, std::uint64_t n_tuples) {
    const std::size_t t = lat.t();
    CandidateScan scan;
    std::vector<std::uint64_t> fz(lat.num_z());
    std::vector<std::int64_t> fz_row(lat.num_z());
    for (std::uint64_t z = 0; z < lat.num_z(); ++z) {
        fz[z] = lat.evaluate(f, z);
        fz_row[z] = sys.index_in_row(lat.slice(z), fz[z]);
    }
    scan.z_count.assign(lat.num_z(), 0);
    std::vector<std::uint64_t> zs;
    for (std::uint64_t k = 0; k < n_tuples; ++k) {
        lat.tuple(k, zs);
        bool member = true;
        for (std::size_t i = 0; i < t && member; ++i) member = fz_row[zs[i]] >= 0;
        // Same tuple through a single index h with f(z_i) = y_{i,h} for all i.
        const auto h = fz_row[zs[0]];
        bool via_h = h >= 0;
        for (std::size_t i = 0; i < t && via_h; ++i) via_h = fz[zs[i]] == sys.y(i, static_cast<std::size_t>(h));
        if (member != via_h) ++scan.mismatches;
        if (member) {
            scan.candidates.push_back(k);
            for (auto z : zs) ++scan.z_count[z];
        }
    }
    return scan;
}

void check_shared(const BehrendSystem& sys, std::size_t r, std::size_t t) {
    if (t < 3) throw DomainError("probfield: t must be at least 3");
    if (r < 2) throw DomainError("probfield: r must be at least 2");
    if (sys.t() != t) throw DomainError("probfield: Behrend system built for a different t");
}

} // namespace

PartiteFamilyReport build_partite_family(std::size_t r, std::size_t t, const BehrendSystem& sys, const Functional& f,
                                         const PartiteFamilyOptions& opt) {
    check_shared(sys, r, t);
    if (f.P != sys.P()) throw DomainError("build_partite_family: functional and system use different primes");
    if (f.coeffs.size() != t * r) throw DomainError("build_partite_family: functional must have t*r coefficients");
    if (!f.kills_all_ones()) throw DomainError("build_partite_family: functional does not vanish on the all-ones vector");
    const TupleLattice lat(r, t);
    if (lat.num_tuples() > opt.lattice_cap)
        throw DomainError("build_partite_family: lattice has " + lat.num_tuples().str() + " tuples, above the cap " +
                          std::to_string(opt.lattice_cap));
    const auto n_tuples = lat.num_tuples().convert_to<std::uint64_t>();

    const auto scan = scan_candidates(lat, sys, f, n_tuples);
    if (scan.mismatches) throw std::logic_error("build_partite_family: candidate characterizations disagree");

    PartiteFamilyReport rep;
    rep.tuples = n_tuples;
    rep.candidates = scan.candidates.size();
    Instance& inst = rep.instance;
    inst.r = r;
    inst.t = t;
    inst.num_vertices = r * t;
    inst.partition = consecutive_partition(r * t, r);
    std::vector<std::uint64_t> zs;
    for (auto k : scan.candidates) {
        lat.tuple(k, zs);
        if (!std::all_of(zs.begin(), zs.end(), [&](std::uint64_t z) { return scan.z_count[z] == 1; })) continue;
        Matching m;
        for (auto z : zs) m.edges.emplace_back(lat.vertices(z));
        m.canonicalize();
        inst.matchings.push_back(std::move(m));
    }
    rep.isolated = inst.matchings.size();
    rep.expected_floor = BigRational(lat.num_tuples() * sys.R(), 2 * ipow(BigInt(sys.P()), t - 1));

    inst.metadata["generator"] = "prob-f";
    inst.metadata["N"] = std::to_string(rep.isolated);
    inst.metadata["P"] = std::to_string(sys.P());
    inst.metadata["R"] = std::to_string(sys.R());
    inst.metadata["seed"] = std::to_string(f.seed);
    inst.metadata["candidates"] = std::to_string(rep.candidates);
    inst.metadata["expected_floor"] = to_string(rep.expected_floor);
    inst.metadata["behrend_method"] = to_string(sys.method());
    return rep;
}

ProbabilityProbeReport probability_probe(std::size_t r, std::size_t t, const BehrendSystem& sys, std::uint64_t max_functionals) {
    check_shared(sys, r, t);
    const std::uint64_t P = sys.P();
    const std::size_t len = t * r;
    const BigInt hyper = ipow(BigInt(P), len - 1);
    if (hyper > max_functionals)
        throw DomainError("probability_probe: P^{tr-1} = " + hyper.str() + " exceeds the enumeration cap " +
                          std::to_string(max_functionals));
    const TupleLattice lat(r, t);
    const auto n_tuples = lat.num_tuples().convert_to<std::uint64_t>();

    ProbabilityProbeReport rep;
    rep.r = r;
    rep.t = t;
    rep.P = P;
    rep.R = sys.R();
    rep.hyperplane_size = hyper.convert_to<std::uint64_t>();

    Functional f;
    f.P = P;
    f.coeffs.assign(len, 0);
    std::vector<std::uint64_t> fixed;
    lat.tuple(0, fixed);
    std::vector<std::uint64_t> zs;
    std::vector<std::uint64_t> fz(lat.num_z());
    std::vector<std::int64_t> fz_row(lat.num_z());

    for (std::uint64_t n = 0; n < rep.hyperplane_size; ++n) {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i + 1 < len; ++i) sum += f.coeffs[i];
        f.coeffs[len - 1] = (P - sum % P) % P;

        for (std::uint64_t z = 0; z < lat.num_z(); ++z) {
            fz[z] = lat.evaluate(f, z);
            fz_row[z] = sys.index_in_row(lat.slice(z), fz[z]);
        }
        bool member = true;
        for (std::size_t i = 0; i < t && member; ++i) member = fz_row[fixed[i]] >= 0;
        const auto h = fz_row[fixed[0]];
        bool via_h = h >= 0;
        for (std::size_t i = 0; i < t && via_h; ++i) via_h = fz[fixed[i]] == sys.y(i, static_cast<std::size_t>(h));
        if (member != via_h) ++rep.characterization_mismatches;

        if (member) {
            ++rep.candidate_count;
            bool isolated = true;
            for (std::uint64_t k = 1; k < n_tuples && isolated; ++k) {
                lat.tuple(k, zs);
                bool shares = false;
                for (std::size_t i = 0; i < t; ++i) shares = shares || zs[i] == fixed[i];
                if (!shares) continue;
                bool cand = true;
                for (std::size_t i = 0; i < t && cand; ++i) cand = fz_row[zs[i]] >= 0;
                if (cand) isolated = false;
            }
            if (isolated) ++rep.isolated_count;
        }

        // Odometer over the first len-1 coordinates.
        for (std::size_t i = 0; i + 1 < len; ++i) {
            if (++f.coeffs[i] < P) break;
            f.coeffs[i] = 0;
        }
    }
    const BigInt denom = ipow(BigInt(P), t - 1);
    rep.expected_candidates = BigRational(hyper * sys.R(), denom);
    rep.isolated_floor = BigRational(hyper * sys.R(), 2 * denom);
    return rep;
}

} // namespace rainbow
