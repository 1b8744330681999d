#include "rainbow/search.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "compiled_family.hpp"
#include "rainbow/instance_io.hpp"

namespace rainbow {

std::string to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::NoneExists: return "NoneExists";
    case SearchStatus::Indeterminate: return "Indeterminate";
    }
    return "Unknown";
}

nlohmann::ordered_json to_json(const SearchOutcome& out) {
    nlohmann::ordered_json j;
    j["status"] = to_string(out.status);
    if (out.certificate) j["certificate"] = certificate_to_json(*out.certificate);
    j["nodes_visited"] = out.nodes_visited;
    return j;
}

namespace {

using detail::CompiledFamily;
using detail::NodeMeter;
using detail::SearchControl;

struct Choice {
    std::uint32_t edge;
    std::uint32_t cls;
};

template <class Mask>
class Engine {
public:
    Engine(const CompiledFamily<Mask>& fam, std::size_t target, SearchControl& ctl)
        : fam_(fam), target_(target), perfect_(target * fam.r == fam.num_vertices), meter_(ctl) {
        const auto k = fam.num_classes();
        remaining_.resize(k);
        lo_.assign(k, 0);
        load_.assign(k, 0);
        stamp_.assign(k, 0);
        for (std::size_t c = 0; c < k; ++c) remaining_[c] = static_cast<std::uint32_t>(fam.multiplicity(c));
    }

    /// Root branch labels. Perfect mode: edge ids at the lowest vertex.
    /// Class mode: positions in the chosen class, then -1 for "skip".
    std::vector<std::int64_t> root_branches() {
        std::vector<std::int64_t> out;
        if (perfect_) {
            if (fam_.num_vertices == 0) return out;
            for (auto e : fam_.edges_by_min[0]) out.push_back(e);
            return out;
        }
        root_class_ = pick_class();
        if (root_class_ < 0) return out;
        const auto& list = fam_.class_edges[static_cast<std::size_t>(root_class_)];
        for (std::size_t p = 0; p < list.size(); ++p) out.push_back(static_cast<std::int64_t>(p));
        out.push_back(-1);
        return out;
    }

    /// Explores one root branch from a fresh state; true if a solution was found.
    bool run_branch(std::int64_t b) {
        if (!meter_.tick()) return aborted();
        if (perfect_) {
            const auto e = static_cast<std::uint32_t>(b);
            if (!place_perfect(e)) return false;
            return dfs_perfect();
        }
        const auto c = static_cast<std::size_t>(root_class_);
        if (b < 0) {
            remaining_[c] = 0;
            const bool ok = dfs_class();
            remaining_[c] = static_cast<std::uint32_t>(fam_.multiplicity(c));
            return ok;
        }
        const auto p = static_cast<std::size_t>(b);
        const auto e = fam_.class_edges[c][p];
        take_class(c, p, e);
        return dfs_class();
    }

    [[nodiscard]] std::vector<Choice> solution() const {
        std::vector<Choice> out;
        for (std::size_t k = 0; k < chosen_.size(); ++k) out.push_back({chosen_[k], assign_[k]});
        return out;
    }
    [[nodiscard]] bool trivially_done() const noexcept { return target_ == 0; }
    void flush() { meter_.flush(); }

private:
    bool aborted() {
        abort_ = true;
        return false;
    }

    // ---- perfect regime: vertex-driven with an incremental system of distinct representatives

    bool augment(std::size_t k) {
        for (auto c : fam_.edge_classes[chosen_[k]]) {
            if (stamp_[c] == epoch_) continue;
            stamp_[c] = epoch_;
            if (load_[c] < fam_.multiplicity(c)) {
                assign_[k] = c;
                ++load_[c];
                terminal_ = c;
                return true;
            }
            for (std::size_t j = 0; j < chosen_.size(); ++j) {
                if (j != k && assign_[j] == c && augment(j)) {
                    assign_[k] = c;
                    return true;
                }
            }
        }
        return false;
    }

    bool place_perfect(std::uint32_t e) {
        chosen_.push_back(e);
        assign_.push_back(kNone);
        ++epoch_;
        if (epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        saved_.push_back(assign_);
        if (!augment(chosen_.size() - 1)) {
            saved_.pop_back();
            chosen_.pop_back();
            assign_.pop_back();
            return false;
        }
        terminals_.push_back(terminal_);
        covered_.add(fam_.masks[e]);
        return true;
    }

    void unplace_perfect() {
        covered_.remove(fam_.masks[chosen_.back()]);
        --load_[terminals_.back()];
        terminals_.pop_back();
        assign_ = std::move(saved_.back());
        saved_.pop_back();
        assign_.pop_back();
        chosen_.pop_back();
    }

    bool dfs_perfect() {
        if (chosen_.size() == target_) return true;
        const VertexId v = covered_.first_unset();
        if (v >= fam_.num_vertices) return false;
        for (auto e : fam_.edges_by_min[v]) {
            if (fam_.masks[e].intersects(covered_)) continue;
            if (!meter_.tick()) return aborted();
            if (!place_perfect(e)) continue;
            if (dfs_perfect()) return true;
            unplace_perfect();
            if (abort_) return false;
        }
        return false;
    }

    // ---- general regime: class-driven with multiset enumeration per class

    /// Class with the fewest compatible edges; -1 when the remaining
    /// capacity cannot reach the target.
    std::int64_t pick_class() {
        const std::size_t needed = target_ - chosen_.size();
        if (fam_.num_vertices - covered_.count() < needed * fam_.r) return -1;
        std::int64_t best = -1;
        std::size_t best_count = std::numeric_limits<std::size_t>::max();
        std::size_t capacity = 0;
        for (std::size_t c = 0; c < fam_.num_classes(); ++c) {
            if (remaining_[c] == 0) continue;
            const auto& list = fam_.class_edges[c];
            std::size_t cnt = 0;
            for (std::size_t p = lo_[c]; p < list.size(); ++p)
                if (!fam_.masks[list[p]].intersects(covered_)) ++cnt;
            if (cnt == 0) continue;
            capacity += std::min<std::size_t>(cnt, remaining_[c]);
            if (cnt < best_count) {
                best_count = cnt;
                best = static_cast<std::int64_t>(c);
            }
        }
        return capacity >= needed ? best : -1;
    }

    void take_class(std::size_t c, std::size_t p, std::uint32_t e) {
        undo_.push_back({static_cast<std::uint32_t>(c), remaining_[c], lo_[c]});
        --remaining_[c];
        lo_[c] = static_cast<std::uint32_t>(p + 1);
        covered_.add(fam_.masks[e]);
        chosen_.push_back(e);
        assign_.push_back(static_cast<std::uint32_t>(c));
    }

    void untake_class() {
        const auto u = undo_.back();
        undo_.pop_back();
        remaining_[u.cls] = u.remaining;
        lo_[u.cls] = u.lo;
        covered_.remove(fam_.masks[chosen_.back()]);
        chosen_.pop_back();
        assign_.pop_back();
    }

    bool dfs_class() {
        if (chosen_.size() == target_) return true;
        const auto pick = pick_class();
        if (pick < 0) return false;
        const auto c = static_cast<std::size_t>(pick);
        const auto& list = fam_.class_edges[c];
        for (std::size_t p = lo_[c]; p < list.size(); ++p) {
            const auto e = list[p];
            if (fam_.masks[e].intersects(covered_)) continue;
            if (!meter_.tick()) return aborted();
            take_class(c, p, e);
            if (dfs_class()) return true;
            untake_class();
            if (abort_) return false;
        }
        if (!meter_.tick()) return aborted();
        const auto keep = remaining_[c];
        remaining_[c] = 0;
        const bool ok = dfs_class();
        if (!ok) remaining_[c] = keep;
        return ok;
    }

    struct Undo {
        std::uint32_t cls;
        std::uint32_t remaining;
        std::uint32_t lo;
    };
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    const CompiledFamily<Mask>& fam_;
    std::size_t target_;
    bool perfect_;
    NodeMeter meter_;
    bool abort_ = false;
    Mask covered_{};
    std::vector<std::uint32_t> chosen_;
    std::vector<std::uint32_t> assign_;
    // class mode
    std::vector<std::uint32_t> remaining_;
    std::vector<std::uint32_t> lo_;
    std::vector<Undo> undo_;
    std::int64_t root_class_ = -1;
    // perfect mode
    std::vector<std::size_t> load_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::uint32_t terminal_ = 0;
    std::vector<std::uint32_t> terminals_;
    std::vector<std::vector<std::uint32_t>> saved_;
};

template <class Mask>
SearchOutcome run_search(const Instance& inst, std::size_t size, const SearchBudget& budget) {
    const CompiledFamily<Mask> fam(inst);
    SearchControl ctl(budget);
    SearchOutcome out;

    std::optional<std::vector<Choice>> solution;
    Engine<Mask> probe(fam, size, ctl);
    const auto branches = probe.root_branches();

    const unsigned threads = std::max(1U, std::min<unsigned>(budget.threads, static_cast<unsigned>(branches.size())));
    if (threads <= 1) {
        for (auto b : branches) {
            Engine<Mask> eng(fam, size, ctl);
            eng.root_branches();
            if (eng.run_branch(b)) {
                solution = eng.solution();
                break;
            }
            eng.flush();
            if (!ctl.live()) break;
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex mu;
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < threads; ++w) {
                pool.emplace_back([&] {
                    while (ctl.live()) {
                        const auto i = next.fetch_add(1);
                        if (i >= branches.size()) return;
                        Engine<Mask> eng(fam, size, ctl);
                        eng.root_branches();
                        if (eng.run_branch(branches[i])) {
                            std::lock_guard lock(mu);
                            if (!solution) solution = eng.solution();
                            ctl.request_stop();
                            return;
                        }
                    }
                });
            }
        }
    }
    probe.flush();
    out.nodes_visited = ctl.nodes();

    if (solution) {
        std::vector<std::size_t> used(fam.num_classes(), 0);
        RainbowCertificate cert;
        for (const auto& ch : *solution)
            cert.picks.push_back({fam.class_colors[ch.cls][used[ch.cls]++], fam.edges[ch.edge]});
        std::sort(cert.picks.begin(), cert.picks.end(), [](const Pick& a, const Pick& b) { return a.color < b.color; });
        if (const auto verdict = check_certificate(inst, cert); !verdict)
            throw std::logic_error("find_rainbow produced an invalid certificate: " + verdict.reason);
        out.status = SearchStatus::Found;
        out.certificate = std::move(cert);
    } else {
        out.status = ctl.exhausted() ? SearchStatus::Indeterminate : SearchStatus::NoneExists;
    }
    return out;
}

} // namespace

SearchOutcome find_rainbow(const Instance& inst, std::size_t size, const SearchBudget& budget) {
    if (const auto rep = validate_instance(inst); !rep.ok())
        throw DomainError("find_rainbow: invalid instance: " + rep.summary());
    if (size == 0 || size > inst.t)
        throw DomainError("find_rainbow: size must lie in [1, t], got " + std::to_string(size));
    if (size > inst.matchings.size() || size * inst.r > inst.num_vertices) {
        SearchOutcome out;
        out.status = SearchStatus::NoneExists;
        return out;
    }
    if (inst.num_vertices <= 128) return run_search<detail::Mask128>(inst, size, budget);
    return run_search<detail::DynMask>(inst, size, budget);
}

} // namespace rainbow
