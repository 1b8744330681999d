#include <stdexcept>

#include "compiled_family.hpp"
#include "rainbow/instance_io.hpp"
#include "rainbow/search.hpp"

namespace rainbow {

std::string to_string(StrongStatus s) {
    switch (s) {
    case StrongStatus::Holds: return "Holds";
    case StrongStatus::Fails: return "Fails";
    case StrongStatus::Indeterminate: return "Indeterminate";
    }
    return "Unknown";
}

nlohmann::ordered_json to_json(const StrongOutcome& out) {
    nlohmann::ordered_json j;
    j["status"] = to_string(out.status);
    if (out.witness) j["witness"] = certificate_to_json(*out.witness);
    j["nodes_visited"] = out.nodes_visited;
    return j;
}

namespace {

using detail::CompiledFamily;
using detail::NodeMeter;
using detail::SearchControl;

// Enumerates t-matchings of the union family and stops at the first one
// whose edges cannot all be attributed to a single color.
template <class Mask>
class StrongScanner {
public:
    StrongScanner(const CompiledFamily<Mask>& fam, std::size_t t, SearchControl& ctl)
        : fam_(fam), t_(t), perfect_(t * fam.r == fam.num_vertices), meter_(ctl) {}

    bool run() { return perfect_ ? dfs_vertex() : dfs_index(0); }
    [[nodiscard]] bool aborted() const noexcept { return abort_; }
    [[nodiscard]] const std::vector<std::uint32_t>& chosen() const noexcept { return chosen_; }

private:
    [[nodiscard]] bool impure() const {
        const auto& first = fam_.edge_colors[chosen_.front()];
        if (first.size() != 1) return true;
        for (auto e : chosen_) {
            const auto& cols = fam_.edge_colors[e];
            if (cols.size() != 1 || cols.front() != first.front()) return true;
        }
        return false;
    }

    bool step(std::uint32_t e) {
        if (!meter_.tick()) {
            abort_ = true;
            return false;
        }
        chosen_.push_back(e);
        covered_.add(fam_.masks[e]);
        const bool hit = perfect_ ? dfs_vertex() : dfs_index(e + 1);
        if (hit) return true;
        covered_.remove(fam_.masks[e]);
        chosen_.pop_back();
        return false;
    }

    bool dfs_vertex() {
        if (chosen_.size() == t_) return impure();
        const VertexId v = covered_.first_unset();
        if (v >= fam_.num_vertices) return false;
        for (auto e : fam_.edges_by_min[v]) {
            if (fam_.masks[e].intersects(covered_)) continue;
            if (step(e)) return true;
            if (abort_) return false;
        }
        return false;
    }

    bool dfs_index(std::uint32_t from) {
        if (chosen_.size() == t_) return impure();
        const auto need = t_ - chosen_.size();
        for (std::uint32_t e = from; e + need <= fam_.edges.size(); ++e) {
            if (fam_.masks[e].intersects(covered_)) continue;
            if (step(e)) return true;
            if (abort_) return false;
        }
        return false;
    }

    const CompiledFamily<Mask>& fam_;
    std::size_t t_;
    bool perfect_;
    NodeMeter meter_;
    bool abort_ = false;
    Mask covered_{};
    std::vector<std::uint32_t> chosen_;
};

template <class Mask>
StrongOutcome run_strong(const Instance& inst, const SearchBudget& budget) {
    const CompiledFamily<Mask> fam(inst);
    SearchControl ctl(budget);
    StrongOutcome out;
    std::optional<std::vector<std::uint32_t>> hit;
    bool aborted = false;
    {
        StrongScanner<Mask> scan(fam, inst.t, ctl);
        if (scan.run()) hit = scan.chosen();
        aborted = scan.aborted();
    }
    out.nodes_visited = ctl.nodes();
    if (hit) {
        RainbowCertificate w;
        for (auto e : *hit) w.picks.push_back({fam.edge_colors[e].front(), fam.edges[e]});
        bool uniform = true;
        for (const auto& p : w.picks) uniform = uniform && p.color == w.picks.front().color;
        if (uniform) {
            for (std::size_t k = 0; k < hit->size(); ++k) {
                const auto& cols = fam.edge_colors[(*hit)[k]];
                if (cols.size() > 1) {
                    w.picks[k].color = cols[1];
                    break;
                }
            }
        }
        out.status = StrongStatus::Fails;
        out.witness = std::move(w);
    } else {
        out.status = aborted || ctl.exhausted() ? StrongStatus::Indeterminate : StrongStatus::Holds;
    }
    return out;
}

} // namespace

StrongOutcome check_strong_property(const Instance& inst, const SearchBudget& budget) {
    if (const auto rep = validate_instance(inst); !rep.ok())
        throw DomainError("check_strong_property: invalid instance: " + rep.summary());
    if (inst.t <= 1 || inst.matchings.size() <= 1 || inst.t * inst.r > inst.num_vertices) {
        StrongOutcome out;
        out.status = StrongStatus::Holds;
        return out;
    }
    if (inst.num_vertices <= 128) return run_strong<detail::Mask128>(inst, budget);
    return run_strong<detail::DynMask>(inst, budget);
}

} // namespace rainbow
