#include "rainbow/behrend.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_set>

#include <boost/dynamic_bitset.hpp>

#include "rainbow/prime_field.hpp"

namespace rainbow {

std::string to_string(BehrendMethod m) {
    switch (m) {
    case BehrendMethod::Auto: return "auto";
    case BehrendMethod::Exhaustive: return "exhaustive";
    case BehrendMethod::Greedy: return "greedy";
    case BehrendMethod::Sphere: return "sphere";
    case BehrendMethod::Explicit: return "explicit";
    }
    return "unknown";
}

BehrendMethod behrend_method_from_string(const std::string& s) {
    if (s == "auto") return BehrendMethod::Auto;
    if (s == "exhaustive") return BehrendMethod::Exhaustive;
    if (s == "greedy") return BehrendMethod::Greedy;
    if (s == "sphere") return BehrendMethod::Sphere;
    throw DomainError("unknown Behrend method '" + s + "' (expected auto, exhaustive, greedy or sphere)");
}

BehrendSystem::BehrendSystem(std::uint64_t P, std::size_t t, std::vector<std::uint64_t> base_set, BehrendMethod method,
                             bool optimal)
    : P_(P), t_(t), base_(std::move(base_set)), method_(method), optimal_(optimal) {
    if (t < 2) throw DomainError("BehrendSystem: t must be at least 2");
    std::sort(base_.begin(), base_.end());
    y_.assign(t, std::vector<std::uint64_t>(base_.size()));
    lookup_.resize(t);
    const std::uint64_t scale = (P - (t - 1) % P) % P; // -(t-1) mod P
    for (std::size_t h = 0; h < base_.size(); ++h) {
        const std::uint64_t a = base_[h] % P;
        for (std::size_t i = 0; i + 1 < t; ++i) y_[i][h] = a;
        y_[t - 1][h] = mul_mod(scale, a, P);
    }
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t h = 0; h < base_.size(); ++h) lookup_[i].emplace_back(y_[i][h], static_cast<std::uint32_t>(h));
        std::sort(lookup_[i].begin(), lookup_[i].end());
        for (std::size_t k = 1; k < lookup_[i].size(); ++k)
            if (lookup_[i][k].first == lookup_[i][k - 1].first)
                throw DomainError("BehrendSystem: row " + std::to_string(i) + " has repeated values");
    }
}

std::int64_t BehrendSystem::index_in_row(std::size_t i, std::uint64_t v) const {
    const auto& row = lookup_[i];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(v, std::uint32_t{0}));
    if (it == row.end() || it->first != v) return -1;
    return it->second;
}

double BehrendSystem::asymptotic_floor() const {
    const double lp = std::log(static_cast<double>(P_));
    const double lt = std::log(static_cast<double>(t_));
    return static_cast<double>(P_) * std::exp(-12.0 * std::sqrt(lp * lt));
}

std::uint64_t behrend_value_limit(std::uint64_t P, std::size_t t) { return (P - 1) / (t - 1); }

namespace {

/// Incremental centroid check through the sums of k-element multisets, k < t.
class CentroidTracker {
public:
    CentroidTracker(std::size_t t, std::uint64_t vmax)
        : t_(t), member_(vmax + 1), sums_(t, boost::dynamic_bitset<>((t - 1) * vmax + 1)) {
        sums_[0].set(0);
    }

    [[nodiscard]] bool can_add(std::uint64_t x) const {
        if (member_.test(x)) return false;
        const std::size_t range = sums_[0].size();
        // x in the centroid slot, k other summands from the set.
        for (std::size_t k = 1; k < t_; ++k)
            if (k * x < range && sums_[k].test(k * x)) return false;
        // x among the summands m times, centroid c from the set.
        for (auto c : members_) {
            for (std::size_t m = 1; m < t_; ++m) {
                const auto lhs = static_cast<std::int64_t>((t_ - 1) * c) - static_cast<std::int64_t>(m * x);
                if (lhs < 0) break;
                if (static_cast<std::size_t>(lhs) < range && sums_[t_ - 1 - m].test(static_cast<std::size_t>(lhs))) return false;
            }
        }
        return true;
    }

    void add(std::uint64_t x) {
        for (std::size_t k = t_ - 1; k >= 1; --k)
            for (std::size_t m = 1; m <= k; ++m) sums_[k] |= sums_[k - m] << (m * x);
        member_.set(x);
        members_.push_back(x);
    }

    [[nodiscard]] const std::vector<std::uint64_t>& members() const noexcept { return members_; }

private:
    std::size_t t_;
    boost::dynamic_bitset<> member_;
    std::vector<boost::dynamic_bitset<>> sums_;
    std::vector<std::uint64_t> members_;
};

constexpr std::uint64_t kTrackerLimit = std::uint64_t{1} << 27;

std::vector<std::uint64_t> greedy_fill(CentroidTracker& tr, std::uint64_t vmax) {
    for (std::uint64_t x = 0; x <= vmax; ++x)
        if (tr.can_add(x)) tr.add(x);
    auto out = tr.members();
    std::sort(out.begin(), out.end());
    return out;
}

struct ExhaustiveResult {
    std::vector<std::uint64_t> set;
    bool optimal = true;
};

/// Maximum centroid-free subset of [0, vmax] via the prefix values r(n).
ExhaustiveResult exhaustive_max(std::size_t t, std::uint64_t vmax, std::uint64_t budget) {
    const std::uint64_t M = vmax + 1;
    std::vector<std::size_t> rv(M + 1, 0);
    ExhaustiveResult res;
    res.set = {0};
    rv[1] = 1;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;

    for (std::uint64_t n = 2; n <= M && !out_of_budget; ++n) {
        const std::size_t target = rv[n - 1] + 1;
        std::vector<std::uint64_t> chosen{0};
        std::vector<CentroidTracker> stack;
        stack.emplace_back(t, vmax);
        stack.back().add(0);
        std::function<bool(std::uint64_t)> dfs = [&](std::uint64_t last) -> bool {
            if (++nodes > budget) {
                out_of_budget = true;
                return false;
            }
            const auto& tr = stack.back();
            if (chosen.size() + 1 == target) {
                if (!tr.can_add(n - 1)) return false;
                chosen.push_back(n - 1);
                return true;
            }
            for (std::uint64_t x = last + 1; x + 1 < n; ++x) {
                if (chosen.size() + 1 + rv[n - 1 - x] < target) break;
                if (!stack.back().can_add(x)) continue;
                stack.push_back(stack.back());
                stack.back().add(x);
                chosen.push_back(x);
                if (dfs(x)) return true;
                chosen.pop_back();
                stack.pop_back();
                if (out_of_budget) return false;
            }
            return false;
        };
        if (target == 2) {
            // Any pair is centroid-free for t >= 2.
            rv[n] = 2;
            res.set = {0, n - 1};
            continue;
        }
        if (dfs(0)) {
            rv[n] = target;
            res.set = chosen;
        } else {
            rv[n] = rv[n - 1];
        }
    }
    if (out_of_budget) {
        res.optimal = false;
        CentroidTracker tr(t, vmax);
        for (auto a : res.set) tr.add(a);
        res.set = greedy_fill(tr, vmax);
    }
    return res;
}

struct SphereParams {
    std::uint64_t d = 0;
    std::size_t k = 0;
    std::uint64_t D = 0;
    std::uint64_t norm = 0;
    std::uint64_t count = 0;
};

std::uint64_t sphere_max_value(std::uint64_t d, std::size_t k, std::uint64_t D) {
    std::uint64_t v = 0, p = 1;
    for (std::size_t j = 0; j < k; ++j) {
        v += D * p;
        p *= d;
    }
    return v;
}

/// Most popular squared norm over digit vectors in [0, D]^k (smallest norm on ties).
void best_norm(SphereParams& sp) {
    std::vector<std::uint64_t> counts{1};
    for (std::size_t j = 0; j < sp.k; ++j) {
        std::vector<std::uint64_t> next(counts.size() + sp.D * sp.D, 0);
        for (std::size_t s = 0; s < counts.size(); ++s)
            if (counts[s])
                for (std::uint64_t g = 0; g <= sp.D; ++g) next[s + g * g] += counts[s];
        counts = std::move(next);
    }
    sp.norm = 0;
    sp.count = 0;
    for (std::size_t s = 0; s < counts.size(); ++s)
        if (counts[s] > sp.count) {
            sp.count = counts[s];
            sp.norm = s;
        }
}

std::vector<std::uint64_t> sphere_elements(const SphereParams& sp) {
    std::vector<std::uint64_t> out;
    std::function<void(std::size_t, std::uint64_t, std::uint64_t, std::uint64_t)> rec =
        [&](std::size_t j, std::uint64_t value, std::uint64_t norm_left, std::uint64_t place) {
            if (j == sp.k) {
                if (norm_left == 0) out.push_back(value);
                return;
            }
            if (norm_left > (sp.k - j) * sp.D * sp.D) return;
            for (std::uint64_t g = 0; g <= sp.D && g * g <= norm_left; ++g)
                rec(j + 1, value + g * place, norm_left - g * g, place * sp.d);
        };
    rec(0, 0, sp.norm, 1);
    std::sort(out.begin(), out.end());
    return out;
}

SphereParams choose_sphere(std::uint64_t P, std::size_t t, std::uint64_t vmax) {
    SphereParams best;
    for (std::size_t k = 1; k <= 12; ++k) {
        // Largest base d with the no-carry digit cap and the value limit.
        std::uint64_t lo = t, hi = vmax + 2, d = 0;
        while (lo <= hi) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            const std::uint64_t D = (mid - 1) / (t - 1);
            const long double approx = static_cast<long double>(D) * std::pow(static_cast<long double>(mid), static_cast<long double>(k));
            const bool fits = approx < 4.0e18L && sphere_max_value(mid, k, D) <= vmax;
            if (fits) {
                d = mid;
                lo = mid + 1;
            } else {
                if (mid == 0) break;
                hi = mid - 1;
            }
        }
        if (d < t) continue;
        SphereParams sp{d, k, (d - 1) / (t - 1), 0, 0};
        if (sp.D == 0) continue;
        best_norm(sp);
        if (sp.count > best.count) best = sp;
    }
    (void)P;
    return best;
}

} // namespace

bool centroid_free(const std::vector<std::uint64_t>& A, std::size_t t) {
    if (A.empty()) return true;
    const auto vmax = *std::max_element(A.begin(), A.end());
    if ((t - 1) * vmax <= kTrackerLimit) {
        CentroidTracker tr(t, vmax);
        for (auto a : A) {
            if (!tr.can_add(a)) return false;
            tr.add(a);
        }
        return true;
    }
    // Direct enumeration of sorted (t-1)-multisets.
    const std::unordered_set<std::uint64_t> members(A.begin(), A.end());
    std::vector<std::uint64_t> sorted = A;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> idx;
    std::function<bool(std::size_t, uint128)> rec = [&](std::size_t from, uint128 sum) -> bool {
        if (idx.size() == t - 1) {
            if (sum % (t - 1) != 0) return true;
            const auto c = static_cast<std::uint64_t>(sum / (t - 1));
            if (!members.count(c)) return true;
            for (auto i : idx)
                if (sorted[i] != c) return false;
            return true;
        }
        for (std::size_t i = from; i < sorted.size(); ++i) {
            idx.push_back(i);
            const bool ok = rec(i, sum + sorted[i]);
            idx.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    return rec(0, 0);
}

BehrendSystem behrend_from_base_set(const PrimeModulus& P, std::size_t t, std::vector<std::uint64_t> A) {
    if (t < 3) throw DomainError("behrend_from_base_set: t must be at least 3");
    std::sort(A.begin(), A.end());
    if (std::adjacent_find(A.begin(), A.end()) != A.end()) throw DomainError("behrend_from_base_set: repeated base values");
    if (!A.empty() && A.back() > behrend_value_limit(P.P, t))
        throw DomainError("behrend_from_base_set: (t-1)*max(A) must be below P");
    if (!centroid_free(A, t)) throw DomainError("behrend_from_base_set: base set has a nontrivial centroid solution");
    return BehrendSystem(P.P, t, std::move(A), BehrendMethod::Explicit, false);
}

BehrendSystem behrend_system(const PrimeModulus& P, std::size_t t, const BehrendOptions& opt) {
    if (t < 3) throw DomainError("behrend_system: t must be at least 3");
    if (P.P < t || !is_prime_u64(P.P)) throw DomainError("behrend_system: P must be a prime >= t");
    const std::uint64_t vmax = behrend_value_limit(P.P, t);

    BehrendMethod method = opt.method;
    if (method == BehrendMethod::Auto)
        method = P.P <= 200 ? BehrendMethod::Exhaustive : P.P <= 100'000 ? BehrendMethod::Greedy : BehrendMethod::Sphere;

    switch (method) {
    case BehrendMethod::Exhaustive: {
        if ((t - 1) * vmax > kTrackerLimit) throw DomainError("behrend_system: P too large for exhaustive search");
        auto res = exhaustive_max(t, vmax, opt.exhaustive_budget);
        return BehrendSystem(P.P, t, std::move(res.set), BehrendMethod::Exhaustive, res.optimal);
    }
    case BehrendMethod::Greedy: {
        if ((t - 1) * vmax > kTrackerLimit) throw DomainError("behrend_system: P too large for greedy search");
        CentroidTracker tr(t, vmax);
        return BehrendSystem(P.P, t, greedy_fill(tr, vmax), BehrendMethod::Greedy, false);
    }
    case BehrendMethod::Sphere: {
        SphereParams sp;
        if (opt.sphere_base != 0 || opt.sphere_digits != 0) {
            if (opt.sphere_base < 2 || opt.sphere_digits == 0)
                throw DomainError("behrend_system: sphere needs a base >= 2 and at least one digit");
            sp.d = opt.sphere_base;
            sp.k = opt.sphere_digits;
            sp.D = (sp.d - 1) / (t - 1);
            if (std::pow(static_cast<long double>(sp.d), static_cast<long double>(sp.k)) > 1.0e18L ||
                sphere_max_value(sp.d, sp.k, sp.D) > vmax)
                throw DomainError("behrend_system: sphere values exceed the no-wraparound limit (t-1)*max < P");
            best_norm(sp);
        } else {
            sp = choose_sphere(P.P, t, vmax);
            if (sp.count == 0) sp = SphereParams{2, 1, 1, 0, 1};
        }
        if (sp.count > 20'000'000) throw DomainError("behrend_system: sphere set too large to materialize");
        auto set = sphere_elements(sp);
        if (opt.sphere_complete && (t - 1) * vmax <= kTrackerLimit) {
            CentroidTracker tr(t, vmax);
            for (auto a : set) {
                if (!tr.can_add(a)) throw std::logic_error("behrend_system: sphere set is not centroid-free");
                tr.add(a);
            }
            set = greedy_fill(tr, vmax);
        }
        return BehrendSystem(P.P, t, std::move(set), BehrendMethod::Sphere, false);
    }
    case BehrendMethod::Auto:
    case BehrendMethod::Explicit: break;
    }
    throw DomainError("behrend_system: unsupported method");
}

BehrendVerdict verify_behrend(const BehrendSystem& sys) {
    const std::size_t t = sys.t();
    const std::size_t R = sys.R();
    const std::uint64_t P = sys.P();
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t h = 0; h < R; ++h)
            if (sys.index_in_row(i, sys.y(i, h)) != static_cast<std::int64_t>(h))
                return {false, "rows", "row " + std::to_string(i) + " has repeated values"};

    long double work = 1;
    for (std::size_t i = 0; i < t; ++i) work *= static_cast<long double>(R);
    if (R <= 60 && work <= 5.0e7L) {
        std::vector<std::size_t> h(t, 0);
        std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t sum) -> bool {
            if (i == t) {
                const bool equal = std::all_of(h.begin(), h.end(), [&](std::size_t x) { return x == h[0]; });
                return (sum == 0) == equal;
            }
            for (std::size_t k = 0; k < R; ++k) {
                h[i] = k;
                if (!rec(i + 1, (sum + sys.y(i, k)) % P)) return false;
            }
            return true;
        };
        if (!rec(0, 0)) return {false, "exhaustive", "an index tuple violates the iff property"};
        return {true, "exhaustive", {}};
    }
    const auto& A = sys.base_set();
    if (!A.empty() && A.back() > behrend_value_limit(P, t)) return {false, "guard", "(t-1)*max(A) >= P"};
    if (!centroid_free(A, t)) return {false, "guard", "base set has a nontrivial centroid solution"};
    return {true, "guard", {}};
}

} // namespace rainbow
