#include <algorithm>
#include <functional>

#include "rainbow/search.hpp"

namespace rainbow {

std::vector<Matching> enumerate_matchings(std::size_t r, std::size_t t, std::size_t universe,
                                          const std::optional<Partition>& partition) {
    // All admissible r-edges in lexicographic order.
    std::vector<Edge> edges;
    std::vector<VertexId> pick;
    std::function<void(VertexId)> gen = [&](VertexId from) {
        if (pick.size() == r) {
            VertexSet s;
            for (auto v : pick) s.insert(v);
            if (partition) {
                for (const auto& part : partition->parts)
                    if ((s & part).size() != 1) return;
            }
            edges.emplace_back(std::move(s));
            return;
        }
        for (VertexId v = from; v < universe; ++v) {
            pick.push_back(v);
            gen(v + 1);
            pick.pop_back();
        }
    };
    gen(0);
    std::sort(edges.begin(), edges.end());

    std::vector<Matching> out;
    Matching cur;
    VertexSet covered;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (cur.edges.size() == t) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < edges.size(); ++i) {
            if (edges[i].vertices.intersects(covered)) continue;
            cur.edges.push_back(edges[i]);
            covered |= edges[i].vertices;
            rec(i + 1);
            covered -= edges[i].vertices;
            cur.edges.pop_back();
        }
    };
    rec(0);
    return out;
}

namespace {

class ExactSearch {
public:
    ExactSearch(const ExactValueParams& p, const SearchBudget& budget) : p_(p), budget_(budget) {
        base_.r = p.r;
        base_.t = p.t;
        base_.num_vertices = p.universe;
        if (p.partite) base_.partition = consecutive_partition(p.universe, p.r);
        candidates_ = enumerate_matchings(p.r, p.t, p.universe, base_.partition);
    }

    ExactValueResult run() {
        ExactValueResult res;
        res.candidate_matchings = candidates_.size();
        std::vector<std::size_t> pool(candidates_.size());
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
        Instance fam = base_;
        best_ = 0;
        best_family_ = fam;
        recurse(fam, pool);
        res.complete = !aborted_;
        res.n_max = best_;
        res.witness = best_family_;
        res.witness.metadata["generator"] = "exact-value";
        res.witness.metadata["N"] = std::to_string(best_);
        res.witness.metadata["complete"] = aborted_ ? "false" : "true";
        res.nodes_visited = nodes_;
        return res;
    }

private:
    /// True when `fam` is certainly rainbow-free; sets aborted_ on budget exhaustion.
    bool rainbow_free(const Instance& fam) {
        if (fam.matchings.size() < p_.t) return true;
        SearchBudget b = budget_;
        b.threads = 1;
        if (b.max_nodes != std::numeric_limits<std::uint64_t>::max()) {
            if (nodes_ >= b.max_nodes) {
                aborted_ = true;
                return false;
            }
            b.max_nodes -= nodes_;
        }
        const auto out = find_rainbow(fam, p_.t, b);
        nodes_ += out.nodes_visited;
        if (out.status == SearchStatus::Indeterminate) aborted_ = true;
        return out.status == SearchStatus::NoneExists;
    }

    void recurse(Instance& fam, std::vector<std::size_t> pool) {
        if (aborted_) return;
        ++nodes_;
        if (nodes_ > budget_.max_nodes) {
            aborted_ = true;
            return;
        }
        const std::size_t size = fam.matchings.size();
        if (size > best_) {
            best_ = size;
            best_family_ = fam;
        }
        if (pool.empty() || size + pool.size() * p_.multiplicity_cap <= best_) return;

        const auto c = pool.front();
        std::vector<std::size_t> rest(pool.begin() + 1, pool.end());

        // Largest admissible multiplicity for c; each prefix is rainbow-free by heredity.
        std::size_t top = 0;
        for (std::size_t m = 1; m <= p_.multiplicity_cap; ++m) {
            fam.matchings.push_back(candidates_[c]);
            ++top;
            if (!rainbow_free(fam) || aborted_) {
                fam.matchings.pop_back();
                --top;
                break;
            }
        }
        if (aborted_) {
            fam.matchings.resize(size);
            return;
        }
        for (std::size_t m = top; m >= 1; --m) {
            fam.matchings.resize(size + m);
            std::vector<std::size_t> next;
            for (auto d : rest) {
                fam.matchings.push_back(candidates_[d]);
                if (rainbow_free(fam)) next.push_back(d);
                fam.matchings.pop_back();
                if (aborted_) break;
            }
            if (aborted_) break;
            recurse(fam, std::move(next));
        }
        fam.matchings.resize(size);
        if (!aborted_) recurse(fam, std::move(rest));
    }

    ExactValueParams p_;
    SearchBudget budget_;
    Instance base_;
    std::vector<Matching> candidates_;
    std::size_t best_ = 0;
    Instance best_family_;
    bool aborted_ = false;
    std::uint64_t nodes_ = 0;
};

} // namespace

ExactValueResult exact_value_search(const ExactValueParams& params, const SearchBudget& budget) {
    if (params.r == 0 || params.t == 0) throw DomainError("exact_value_search: r and t must be positive");
    if (params.universe < params.r * params.t)
        throw DomainError("exact_value_search: universe must be at least r*t");
    if (params.multiplicity_cap == 0 || params.multiplicity_cap + 1 > params.t)
        throw DomainError("exact_value_search: multiplicity_cap must lie in [1, t-1]");
    return ExactSearch(params, budget).run();
}

} // namespace rainbow
