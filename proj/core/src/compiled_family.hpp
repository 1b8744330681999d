#pragma once

// Search-side encoding of an instance: distinct edges as fixed-width masks,
// identical matchings merged into color classes.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <vector>

#include "rainbow/instance.hpp"
#include "rainbow/search.hpp"

namespace rainbow::detail {

/// Two-word mask for instances with at most 128 vertices.
struct Mask128 {
    std::array<std::uint64_t, 2> w{0, 0};

    static Mask128 from(const VertexSet& s) {
        Mask128 m;
        const auto words = s.words();
        for (std::size_t i = 0; i < words.size() && i < 2; ++i) m.w[i] = words[i];
        return m;
    }
    [[nodiscard]] bool intersects(const Mask128& o) const noexcept { return (w[0] & o.w[0]) | (w[1] & o.w[1]); }
    void add(const Mask128& o) noexcept {
        w[0] |= o.w[0];
        w[1] |= o.w[1];
    }
    void remove(const Mask128& o) noexcept {
        w[0] &= ~o.w[0];
        w[1] &= ~o.w[1];
    }
    [[nodiscard]] bool test(VertexId v) const noexcept { return (w[v >> 6] >> (v & 63)) & 1U; }
    [[nodiscard]] VertexId first_unset() const noexcept {
        if (~w[0]) return static_cast<VertexId>(std::countr_zero(~w[0]));
        if (~w[1]) return static_cast<VertexId>(64 + std::countr_zero(~w[1]));
        return 128;
    }
    [[nodiscard]] std::size_t count() const noexcept {
        return static_cast<std::size_t>(std::popcount(w[0]) + std::popcount(w[1]));
    }
};

/// Unbounded fallback backed by VertexSet.
struct DynMask {
    VertexSet s;

    static DynMask from(const VertexSet& v) { return DynMask{v}; }
    [[nodiscard]] bool intersects(const DynMask& o) const noexcept { return s.intersects(o.s); }
    void add(const DynMask& o) { s |= o.s; }
    void remove(const DynMask& o) { s -= o.s; }
    [[nodiscard]] bool test(VertexId v) const noexcept { return s.contains(v); }
    [[nodiscard]] VertexId first_unset() const noexcept {
        const auto words = s.words();
        for (std::size_t i = 0; i < words.size(); ++i)
            if (~words[i]) return static_cast<VertexId>(i * 64 + static_cast<std::size_t>(std::countr_zero(~words[i])));
        return static_cast<VertexId>(words.size() * 64);
    }
    [[nodiscard]] std::size_t count() const noexcept { return s.size(); }
};

template <class Mask>
struct CompiledFamily {
    std::size_t r = 0;
    std::size_t num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<Mask> masks;
    /// Classes containing each edge (ascending).
    std::vector<std::vector<std::uint32_t>> edge_classes;
    /// Colors containing each edge (ascending).
    std::vector<std::vector<std::uint32_t>> edge_colors;
    /// Edges of each class, in the class's canonical edge order.
    std::vector<std::vector<std::uint32_t>> class_edges;
    /// Colors of each class, ascending.
    std::vector<std::vector<std::size_t>> class_colors;
    /// Edges indexed by their smallest vertex.
    std::vector<std::vector<std::uint32_t>> edges_by_min;

    explicit CompiledFamily(const Instance& inst) : r(inst.r), num_vertices(inst.num_vertices) {
        std::map<VertexSet, std::uint32_t> edge_id;
        std::map<std::vector<std::uint32_t>, std::uint32_t> class_id;
        for (std::size_t c = 0; c < inst.matchings.size(); ++c) {
            std::vector<std::uint32_t> ids;
            for (const auto& e : inst.matchings[c].edges) {
                auto [it, fresh] = edge_id.try_emplace(e.vertices, static_cast<std::uint32_t>(edges.size()));
                if (fresh) {
                    edges.push_back(e);
                    masks.push_back(Mask::from(e.vertices));
                    edge_classes.emplace_back();
                    edge_colors.emplace_back();
                }
                ids.push_back(it->second);
                edge_colors[it->second].push_back(static_cast<std::uint32_t>(c));
            }
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            auto [cit, cfresh] = class_id.try_emplace(ids, static_cast<std::uint32_t>(class_edges.size()));
            if (cfresh) {
                class_edges.push_back(ids);
                class_colors.emplace_back();
                for (auto e : ids) edge_classes[e].push_back(cit->second);
            }
            class_colors[cit->second].push_back(c);
        }
        for (auto& cols : edge_colors) cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        edges_by_min.resize(num_vertices + 1);
        for (std::uint32_t e = 0; e < edges.size(); ++e) {
            const VertexId m = edges[e].vertices.empty() ? 0 : edges[e].vertices.min();
            if (m < edges_by_min.size()) edges_by_min[m].push_back(e);
        }
    }

    [[nodiscard]] std::size_t num_classes() const noexcept { return class_edges.size(); }
    [[nodiscard]] std::size_t multiplicity(std::size_t c) const noexcept { return class_colors[c].size(); }
};

/// Budget bookkeeping shared by cooperating workers.
class SearchControl {
public:
    explicit SearchControl(const SearchBudget& b)
        : max_nodes_(b.max_nodes), start_(std::chrono::steady_clock::now()), max_millis_(b.max_millis) {}

    /// Adds `n` locally counted nodes; returns false once the budget is spent or a stop was requested.
    bool charge(std::uint64_t n) {
        const auto total = nodes_.fetch_add(n, std::memory_order_relaxed) + n;
        if (total > max_nodes_) exhausted_.store(true, std::memory_order_relaxed);
        if (max_millis_ != std::numeric_limits<std::uint64_t>::max()) {
            const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
            if (static_cast<std::uint64_t>(elapsed.count()) > max_millis_) exhausted_.store(true, std::memory_order_relaxed);
        }
        return !exhausted_.load(std::memory_order_relaxed) && !stop_.load(std::memory_order_relaxed);
    }
    [[nodiscard]] bool live() const noexcept {
        return !exhausted_.load(std::memory_order_relaxed) && !stop_.load(std::memory_order_relaxed);
    }
    void request_stop() noexcept { stop_.store(true, std::memory_order_relaxed); }
    [[nodiscard]] bool exhausted() const noexcept { return exhausted_.load(std::memory_order_relaxed); }
    [[nodiscard]] std::uint64_t nodes() const noexcept { return nodes_.load(std::memory_order_relaxed); }

private:
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> exhausted_{false};
    std::atomic<bool> stop_{false};
    std::uint64_t max_nodes_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t max_millis_;
};

/// Node counter that reports to a SearchControl in batches.
class NodeMeter {
public:
    explicit NodeMeter(SearchControl& ctl) : ctl_(ctl) {}
    ~NodeMeter() { flush(); }
    NodeMeter(const NodeMeter&) = delete;
    NodeMeter& operator=(const NodeMeter&) = delete;

    /// Counts one node; returns false when the search must abort.
    bool tick() {
        if (++pending_ >= kBatch) return flush();
        return true;
    }
    bool flush() {
        const bool ok = ctl_.charge(pending_);
        pending_ = 0;
        return ok;
    }

private:
    static constexpr std::uint64_t kBatch = 256;
    SearchControl& ctl_;
    std::uint64_t pending_ = 0;
};

} // namespace rainbow::detail
