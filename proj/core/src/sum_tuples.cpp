#include <bit>
#include <functional>

#include "compiled_family.hpp"
#include "rainbow/constructions.hpp"

namespace rainbow {

namespace {

std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

/// Searches for j_1..j_t, not all equal, with x_{i,j_i} pairwise disjoint.
/// When `fresh` is set, at least one index must equal it.
class MixedSearch {
public:
    MixedSearch(const SumTupleSystem& sys, std::optional<std::size_t> fresh, detail::NodeMeter* meter)
        : sys_(sys), fresh_(fresh), meter_(meter) {}

    bool found() { return rec(0, 0, false, std::nullopt, false); }
    [[nodiscard]] bool aborted() const noexcept { return aborted_; }

private:
    bool rec(std::size_t i, std::uint64_t covered, bool mixed, std::optional<std::size_t> first, bool hit_fresh) {
        if (i == sys_.t) return mixed && (!fresh_ || hit_fresh);
        for (std::size_t j = 0; j < sys_.tuples.size(); ++j) {
            if (meter_ && !meter_->tick()) {
                aborted_ = true;
                return false;
            }
            const auto x = sys_.tuples[j][i];
            if (x & covered) continue;
            const bool m = mixed || (first && *first != j);
            if (rec(i + 1, covered | x, m, first ? first : std::optional<std::size_t>(j), hit_fresh || (fresh_ && *fresh_ == j)))
                return true;
            if (aborted_) return false;
        }
        return false;
    }

    const SumTupleSystem& sys_;
    std::optional<std::size_t> fresh_;
    detail::NodeMeter* meter_;
    bool aborted_ = false;
};

} // namespace

SumTupleVerdict verify_sum_tuples(const SumTupleSystem& sys) {
    if (sys.t == 0) return {false, "t must be positive"};
    if (sys.n == 0 || sys.n > 64) return {false, "n must lie in [1, 64]"};
    if (sys.n % sys.t != 0) return {false, "t must divide n"};
    const std::size_t w = sys.n / sys.t;
    const auto all = full_mask(sys.n);
    for (std::size_t j = 0; j < sys.tuples.size(); ++j) {
        const auto& tup = sys.tuples[j];
        if (tup.size() != sys.t) return {false, "tuple " + std::to_string(j) + " has the wrong length"};
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < sys.t; ++i) {
            if (tup[i] & ~all) return {false, "tuple " + std::to_string(j) + " row " + std::to_string(i) + " exceeds n"};
            if (static_cast<std::size_t>(std::popcount(tup[i])) != w)
                return {false, "tuple " + std::to_string(j) + " row " + std::to_string(i) + " does not have n/t ones"};
            if (acc & tup[i]) return {false, "tuple " + std::to_string(j) + " rows overlap"};
            acc |= tup[i];
        }
        if (acc != all) return {false, "tuple " + std::to_string(j) + " does not sum to the all-ones vector"};
    }
    MixedSearch probe(sys, std::nullopt, nullptr);
    if (probe.found()) return {false, "a mixed index choice sums to the all-ones vector"};
    return {true, {}};
}

SumTupleSystem generate_sum_tuples(std::size_t t, std::size_t n, const SearchBudget& budget) {
    if (t < 3) throw DomainError("generate_sum_tuples: t must be at least 3");
    if (n == 0 || n % t != 0) throw DomainError("generate_sum_tuples: t must divide n");
    if (n > 64) throw DomainError("generate_sum_tuples: n must be at most 64");

    SumTupleSystem sys;
    sys.n = n;
    sys.t = t;
    const std::size_t w = n / t;
    detail::SearchControl ctl(budget);
    detail::NodeMeter meter(ctl);

    // Ordered partitions (X_1..X_t) of [n] into blocks of size w, lexicographic.
    std::vector<std::uint64_t> tuple(t);
    bool stop = false;
    std::function<void(std::size_t, std::uint64_t)> blocks;
    std::function<void(std::size_t, std::size_t, std::uint64_t, std::size_t, std::uint64_t)> pick;

    auto offer = [&] {
        sys.tuples.push_back(tuple);
        MixedSearch check(sys, sys.tuples.size() - 1, &meter);
        const bool bad = check.found();
        if (check.aborted()) {
            sys.tuples.pop_back();
            sys.truncated = true;
            stop = true;
            return;
        }
        if (bad) sys.tuples.pop_back();
    };
    pick = [&](std::size_t i, std::size_t from, std::uint64_t used, std::size_t left, std::uint64_t block) {
        if (stop) return;
        if (left == 0) {
            tuple[i] = block;
            blocks(i + 1, used | block);
            return;
        }
        for (std::size_t v = from; v < n; ++v) {
            const auto bit = std::uint64_t{1} << v;
            if (used & bit) continue;
            pick(i, v + 1, used, left - 1, block | bit);
            if (stop) return;
        }
    };
    blocks = [&](std::size_t i, std::uint64_t used) {
        if (stop) return;
        if (!meter.tick()) {
            sys.truncated = true;
            stop = true;
            return;
        }
        if (i == t) {
            offer();
            return;
        }
        pick(i, 0, used, w, 0);
    };
    blocks(0, 0);
    meter.flush();
    sys.nodes_visited = ctl.nodes();

    if (const auto v = verify_sum_tuples(sys); !v)
        throw std::logic_error("generate_sum_tuples produced an invalid system: " + v.reason);
    return sys;
}

Instance tuples_to_matchings_F(const SumTupleSystem& sys) {
    if (const auto v = verify_sum_tuples(sys); !v) throw DomainError("tuples_to_matchings_F: " + v.reason);
    Instance inst;
    inst.t = sys.t;
    inst.r = sys.n / sys.t + 1;
    inst.num_vertices = sys.n + sys.t;
    for (const auto& tup : sys.tuples) {
        Matching m;
        for (std::size_t i = 0; i < sys.t; ++i) {
            const std::uint64_t words[] = {tup[i]};
            VertexSet s = VertexSet::from_words(words);
            s.insert(static_cast<VertexId>(sys.n + i));
            m.edges.emplace_back(std::move(s));
        }
        m.canonicalize();
        inst.matchings.push_back(std::move(m));
    }
    inst.metadata["generator"] = "sum-tuple-F";
    inst.metadata["N"] = std::to_string(inst.matchings.size());
    inst.metadata["n"] = std::to_string(sys.n);
    return inst;
}

} // namespace rainbow
