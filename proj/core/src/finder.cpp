#include "rainbow/finder.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "rainbow/prime_field.hpp"

namespace rainbow {

bool eq_spread(std::uint64_t petal, std::uint64_t family, std::uint64_t base, std::size_t core_size) noexcept {
    if (petal == 0) return family == 0;
    uint128 lhs = petal;
    for (std::size_t i = 0; i < core_size; ++i) {
        lhs *= base;
        if (lhs >= family) return true;
    }
    return lhs >= family;
}

std::optional<std::size_t> SpreadDecomposition::step_of(const Edge& e) const {
    for (std::size_t k = 0; k < steps.size(); ++k)
        if (std::find(steps[k].petals.begin(), steps[k].petals.end(), e) != steps[k].petals.end()) return k;
    return std::nullopt;
}

bool SpreadDecomposition::in_residual(const Edge& e) const {
    return std::binary_search(residual.begin(), residual.end(), e);
}

namespace {

std::vector<Edge> distinct_edges(const Instance& inst) {
    std::vector<Edge> out;
    for (const auto& m : inst.matchings)
        for (const auto& e : m.edges) out.push_back(e);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<VertexSet, std::vector<std::size_t>> colors_by_edge(const Instance& inst) {
    std::map<VertexSet, std::vector<std::size_t>> out;
    for (std::size_t c = 0; c < inst.matchings.size(); ++c)
        for (const auto& e : inst.matchings[c].edges) {
            auto& v = out[e.vertices];
            if (v.empty() || v.back() != c) v.push_back(c);
        }
    return out;
}

} // namespace

SpreadDecomposition spread_decompose(const Instance& inst) {
    if (const auto rep = validate_instance(inst); !rep.ok())
        throw DomainError("spread_decompose: invalid instance: " + rep.summary());
    SpreadDecomposition dec;
    dec.base = inst.t * inst.r + inst.t;
    dec.threshold = 1;
    for (std::size_t i = 0; i < inst.r; ++i) dec.threshold *= dec.base;

    std::vector<Edge> family = distinct_edges(inst);
    while (BigInt(family.size()) > dec.threshold) {
        const std::uint64_t fsize = family.size();
        VertexSet core;
        std::vector<std::size_t> members(family.size());
        for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
        while (true) {
            std::map<VertexId, std::uint64_t> count;
            for (auto i : members)
                family[i].vertices.for_each([&](VertexId v) {
                    if (!core.contains(v)) ++count[v];
                });
            std::optional<VertexId> best;
            std::uint64_t best_count = 0;
            for (const auto& [v, c] : count) {
                if (!eq_spread(c, fsize, dec.base, core.size() + 1)) continue;
                if (!best || c > best_count) {
                    best = v;
                    best_count = c;
                }
            }
            if (!best) break;
            core.insert(*best);
            std::erase_if(members, [&](std::size_t i) { return !family[i].vertices.contains(*best); });
        }
        SpreadStep step;
        step.core = core;
        step.family_size = fsize;
        std::vector<Edge> rest;
        for (auto& e : family) {
            if (core.is_subset_of(e.vertices))
                step.petals.push_back(std::move(e));
            else
                rest.push_back(std::move(e));
        }
        family = std::move(rest);
        dec.steps.push_back(std::move(step));
    }
    dec.residual = std::move(family);
    return dec;
}

std::size_t edge_degree(const Instance& inst, const Edge& e) {
    std::size_t d = 0;
    for (const auto& m : inst.matchings) d += m.contains(e) ? 1 : 0;
    return d;
}

DollarReport dollar_select(const SpreadDecomposition& dec, const Instance& inst) {
    DollarReport rep;
    const std::size_t N = inst.matchings.size();
    if (N == 0) throw DomainError("dollar_select: instance has no colors");
    rep.money.assign(N, BigRational(0));
    const auto by_edge = colors_by_edge(inst);
    for (const auto& e : dec.residual) {
        const auto it = by_edge.find(e.vertices);
        if (it == by_edge.end()) continue;
        const BigRational share(1, it->second.size());
        for (auto c : it->second) rep.money[c] += share;
        rep.total += 1;
    }
    std::optional<std::size_t> pick;
    for (std::size_t c = 0; c < N && !pick; ++c)
        if (rep.money[c] <= 1) pick = c;
    rep.within_one = pick.has_value();
    if (!pick) pick = static_cast<std::size_t>(std::min_element(rep.money.begin(), rep.money.end()) - rep.money.begin());
    rep.color = *pick;

    Matching mj = inst.matchings[rep.color];
    mj.canonicalize();
    for (const auto& e : mj.edges)
        if (dec.in_residual(e)) rep.ordered_edges.push_back(e);
    rep.m = rep.ordered_edges.size();
    for (const auto& e : mj.edges)
        if (!dec.in_residual(e)) rep.ordered_edges.push_back(e);
    return rep;
}

std::optional<std::vector<std::size_t>> hall_assign(const DollarReport& rep, const Instance& inst) {
    const auto by_edge = colors_by_edge(inst);
    std::vector<std::vector<std::size_t>> adj(rep.m);
    for (std::size_t h = 0; h < rep.m; ++h) {
        const auto it = by_edge.find(rep.ordered_edges[h].vertices);
        if (it != by_edge.end()) adj[h] = it->second;
    }
    std::map<std::size_t, std::size_t> owner; // color -> left index
    std::vector<std::size_t> match(rep.m, 0);
    std::set<std::size_t> seen;
    std::function<bool(std::size_t)> try_left = [&](std::size_t h) -> bool {
        for (auto c : adj[h]) {
            if (!seen.insert(c).second) continue;
            const auto it = owner.find(c);
            if (it == owner.end() || try_left(it->second)) {
                owner[c] = h;
                match[h] = c;
                return true;
            }
        }
        return false;
    };
    for (std::size_t h = 0; h < rep.m; ++h) {
        seen.clear();
        if (!try_left(h)) {
            if (rep.within_one)
                throw std::logic_error("hall_assign: no assignment although the chosen color received at most one unit");
            return std::nullopt;
        }
    }
    return match;
}

AugmentResult augment(const DollarReport& rep, const std::vector<std::size_t>& colors, const SpreadDecomposition& dec,
                      const Instance& inst) {
    const auto by_edge = colors_by_edge(inst);
    const std::size_t t = rep.ordered_edges.size();
    std::vector<Edge> current = rep.ordered_edges;
    std::vector<std::size_t> assigned(colors.begin(), colors.end());
    std::set<std::size_t> used(colors.begin(), colors.end());

    AugmentResult res;
    for (std::size_t h = rep.m; h < t; ++h) {
        const auto k = dec.step_of(current[h]);
        if (!k) {
            res.failed_at = h + 1;
            return res;
        }
        bool placed = false;
        for (const auto& cand : dec.steps[*k].petals) {
            bool clash = false;
            for (std::size_t o = 0; o < t && !clash; ++o)
                if (o != h && cand.vertices.intersects(current[o].vertices)) clash = true;
            if (clash) continue;
            const auto it = by_edge.find(cand.vertices);
            if (it == by_edge.end()) continue;
            for (auto c : it->second) {
                if (used.count(c)) continue;
                current[h] = cand;
                assigned.push_back(c);
                used.insert(c);
                placed = true;
                break;
            }
            if (placed) break;
        }
        if (!placed) {
            res.failed_at = h + 1;
            return res;
        }
    }
    RainbowCertificate cert;
    for (std::size_t h = 0; h < t; ++h) cert.picks.push_back({assigned[h], current[h]});
    std::sort(cert.picks.begin(), cert.picks.end(), [](const Pick& a, const Pick& b) { return a.color < b.color; });
    if (const auto v = check_certificate(inst, cert); !v) throw std::logic_error("augment: invalid certificate: " + v.reason);
    res.certificate = std::move(cert);
    return res;
}

std::string to_string(FinderPath p) { return p == FinderPath::Constructive ? "constructive" : "fallback-exhaustive"; }

nlohmann::ordered_json to_json(const ConstructiveOutcome& out) {
    nlohmann::ordered_json j = to_json(out.outcome);
    j["path"] = to_string(out.path);
    j["above_threshold"] = out.above_threshold;
    j["steps"] = out.steps;
    j["residual"] = out.residual;
    j["chosen_color"] = out.chosen_color;
    j["m"] = out.m;
    if (!out.note.empty()) j["note"] = out.note;
    return j;
}

ConstructiveOutcome find_rainbow_constructive(const Instance& inst, const SearchBudget& budget) {
    if (const auto rep = validate_instance(inst); !rep.ok())
        throw DomainError("find_rainbow_constructive: invalid instance: " + rep.summary());
    ConstructiveOutcome out;
    const std::size_t N = inst.matchings.size();
    BigInt thr = 1;
    for (std::size_t i = 0; i < inst.r; ++i) thr *= inst.t * inst.r + inst.t;
    out.above_threshold = BigInt(N) >= thr;

    auto fallback = [&](std::string note) {
        out.path = FinderPath::Fallback;
        out.note = std::move(note);
        out.outcome = find_rainbow(inst, inst.t, budget);
        return out;
    };
    if (N < inst.t) return fallback("fewer colors than t");

    const auto dec = spread_decompose(inst);
    out.steps = dec.steps.size();
    out.residual = dec.residual.size();
    const auto dollars = dollar_select(dec, inst);
    out.chosen_color = dollars.color;
    out.m = dollars.m;
    const auto colors = hall_assign(dollars, inst);
    if (!colors) return fallback("no distinct colors for the residual edges of the chosen matching");
    const auto aug = augment(dollars, *colors, dec, inst);
    if (!aug.certificate) return fallback("no replacement edge at position " + std::to_string(*aug.failed_at));
    out.path = FinderPath::Constructive;
    out.outcome.status = SearchStatus::Found;
    out.outcome.certificate = aug.certificate;
    return out;
}

} // namespace rainbow
