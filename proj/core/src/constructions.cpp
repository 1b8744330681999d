#include "rainbow/constructions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace rainbow {

namespace {

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> c(k);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        out.push_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

Edge edge_of(const std::vector<std::size_t>& vs) {
    VertexSet s;
    for (auto v : vs) s.insert(static_cast<VertexId>(v));
    return Edge{std::move(s)};
}

Instance partite_shell(std::size_t r, std::size_t t) {
    Instance inst;
    inst.r = r;
    inst.t = t;
    inst.num_vertices = r * t;
    inst.partition = consecutive_partition(r * t, r);
    return inst;
}

} // namespace

ShiftTuple ShiftTuple::shifted(std::size_t j) const {
    ShiftTuple out;
    const std::size_t r = entries.size();
    out.entries.resize(r);
    for (std::size_t p = 0; p < r; ++p) out.entries[p] = entries[(p + j) % r];
    return out;
}

std::size_t fixed_r_local_index(int symbol, std::size_t r, std::size_t t) {
    if (ShiftTuple::is_a(symbol)) return t - r + static_cast<std::size_t>(-symbol) - 1;
    return static_cast<std::size_t>(symbol) - 1;
}

std::vector<ShiftTuple> fixed_r_tuples(const std::vector<int>& x, std::size_t t) {
    const std::size_t r = x.size();
    std::vector<ShiftTuple> out;
    // (i)
    ShiftTuple base;
    for (std::size_t h = 1; h <= r; ++h) base.entries.push_back(ShiftTuple::a(h));
    out.push_back(base);
    // (ii)
    for (std::size_t j = 0; j < r; ++j) {
        ShiftTuple s;
        s.entries.assign(r, ShiftTuple::a(j + 1));
        s.entries[j] = x[j];
        out.push_back(s);
    }
    // (iii)
    const ShiftTuple xs{x};
    for (std::size_t j = 1; j < r; ++j) out.push_back(xs.shifted(j));
    // (iv)
    for (int i = 1; i <= static_cast<int>(t - r); ++i) {
        if (std::find(x.begin(), x.end(), i) != x.end()) continue;
        out.push_back(ShiftTuple{std::vector<int>(r, i)});
    }
    return out;
}

std::vector<std::vector<int>> fixed_r_blocks(std::size_t r, std::size_t t) {
    const std::size_t b = t / r - 1;
    std::vector<std::vector<int>> blocks(r);
    for (std::size_t s = 1; s <= t - r; ++s) {
        const std::size_t idx = std::min((s - 1) / b, r - 1);
        blocks[idx].push_back(static_cast<int>(s));
    }
    return blocks;
}

Instance fixed_r_construction(std::size_t r, std::size_t t) {
    if (r < 3) throw DomainError("fixed_r_construction: r must be at least 3");
    if (t < 2 * r) throw DomainError("fixed_r_construction: t must be at least 2r");
    Instance inst = partite_shell(r, t);
    const auto blocks = fixed_r_blocks(r, t);

    std::vector<int> x(r);
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == r) {
            Matching m;
            for (const auto& tup : fixed_r_tuples(x, t)) {
                std::vector<std::size_t> vs;
                for (std::size_t p = 0; p < r; ++p) vs.push_back(p * t + fixed_r_local_index(tup.entries[p], r, t));
                m.edges.push_back(edge_of(vs));
            }
            m.canonicalize();
            inst.matchings.push_back(std::move(m));
            return;
        }
        for (int s : blocks[j]) {
            x[j] = s;
            rec(j + 1);
        }
    };
    rec(0);

    std::size_t formula = 1;
    for (std::size_t j = 0; j < r; ++j) formula *= t / r - 1;
    inst.metadata["generator"] = "fixed-r";
    inst.metadata["N"] = std::to_string(inst.matchings.size());
    inst.metadata["N_formula"] = std::to_string(formula);
    return inst;
}

Instance simple_F_construction(std::size_t r, std::size_t t) {
    if (r < 2) throw DomainError("simple_F_construction: r must be at least 2");
    if (t < 2) throw DomainError("simple_F_construction: t must be at least 2");
    if (r % 2 == 1) {
        Instance lifted = lift_uniformity(simple_F_construction(r - 1, t), r);
        lifted.metadata["generator"] = "simple-F";
        lifted.metadata["lifted_from_r"] = std::to_string(r - 1);
        return lifted;
    }
    const std::size_t n = t * r;
    const std::size_t a = n - 2, a2 = n - 1;
    const std::size_t pairs = (n - 2) / 2;
    // Pair k (0-based) is {label k+1, label tr-1-(k+1)} = vertices {k, n-3-k}.
    auto low = [](std::size_t k) { return k; };
    auto high = [n](std::size_t k) { return n - 3 - k; };

    Instance inst;
    inst.r = r;
    inst.t = t;
    inst.num_vertices = n;
    for (const auto& combo : combinations(pairs, r - 1)) {
        for (std::size_t bits = 0; bits < (std::size_t{1} << (r - 1)); ++bits) {
            std::vector<std::size_t> xs{a}, mirror{a2};
            std::vector<bool> used(pairs, false);
            for (std::size_t i = 0; i < combo.size(); ++i) {
                const auto k = combo[i];
                used[k] = true;
                const bool flip = (bits >> i) & 1U;
                xs.push_back(flip ? high(k) : low(k));
                mirror.push_back(flip ? low(k) : high(k));
            }
            Matching m;
            m.edges.push_back(edge_of(xs));
            m.edges.push_back(edge_of(mirror));
            std::vector<std::size_t> group;
            for (std::size_t k = 0; k < pairs; ++k) {
                if (used[k]) continue;
                group.push_back(low(k));
                group.push_back(high(k));
                if (group.size() == r) {
                    m.edges.push_back(edge_of(group));
                    group.clear();
                }
            }
            m.canonicalize();
            inst.matchings.push_back(std::move(m));
        }
    }
    inst.metadata["generator"] = "simple-F";
    inst.metadata["N"] = std::to_string(inst.matchings.size());
    return inst;
}

Instance simple_f_construction(std::size_t r, std::size_t t) {
    if (r < 3) throw DomainError("simple_f_construction: r must be at least 3");
    if (t < 2) throw DomainError("simple_f_construction: t must be at least 2");
    if (r % 2 == 0) {
        Instance lifted = lift_uniformity(simple_f_construction(r - 1, t), r);
        lifted.metadata["generator"] = "simple-f";
        lifted.metadata["lifted_from_r"] = std::to_string(r - 1);
        return lifted;
    }
    Instance inst = partite_shell(r, t);
    const std::size_t q = r - 1;
    const std::size_t last = q * t;
    std::vector<std::size_t> x(q);

    std::function<void(std::size_t)> rec = [&](std::size_t p) {
        if (p == q) {
            Matching m;
            std::vector<std::size_t> first, second;
            for (std::size_t i = 0; i < q; ++i) {
                first.push_back(i * t + x[i]);
                second.push_back(i * t + x[i ^ 1U]);
            }
            first.push_back(last + 0);
            second.push_back(last + 1);
            m.edges.push_back(edge_of(first));
            m.edges.push_back(edge_of(second));
            // Unused labels of each part pair, ascending.
            std::vector<std::vector<std::size_t>> unused(q / 2);
            for (std::size_t k = 0; k < q / 2; ++k)
                for (std::size_t l = 0; l < t; ++l)
                    if (l != x[2 * k] && l != x[2 * k + 1]) unused[k].push_back(l);
            for (std::size_t i = 0; i + 2 < t; ++i) {
                std::vector<std::size_t> row;
                for (std::size_t k = 0; k < q / 2; ++k) {
                    row.push_back((2 * k) * t + unused[k][i]);
                    row.push_back((2 * k + 1) * t + unused[k][i]);
                }
                row.push_back(last + 2 + i);
                m.edges.push_back(edge_of(row));
            }
            m.canonicalize();
            inst.matchings.push_back(std::move(m));
            return;
        }
        for (std::size_t l = 0; l < t; ++l) {
            if (p % 2 == 1 && l == x[p - 1]) continue;
            x[p] = l;
            rec(p + 1);
        }
    };
    rec(0);
    inst.metadata["generator"] = "simple-f";
    inst.metadata["N"] = std::to_string(inst.matchings.size());
    return inst;
}

Instance lift_uniformity(const Instance& inst, std::size_t target_r) {
    if (target_r != inst.r + 1) throw DomainError("lift_uniformity: target must be r+1");
    if (inst.num_vertices != inst.t * inst.r)
        throw DomainError("lift_uniformity: input must have exactly t*r vertices");
    if (const auto rep = validate_instance(inst); !rep.ok())
        throw DomainError("lift_uniformity: invalid input: " + rep.summary());

    Instance out;
    out.r = target_r;
    out.t = inst.t;
    out.num_vertices = inst.num_vertices + inst.t;
    out.metadata = inst.metadata;
    if (inst.partition) {
        Partition p = *inst.partition;
        VertexSet fresh;
        for (std::size_t i = 0; i < inst.t; ++i) fresh.insert(static_cast<VertexId>(inst.num_vertices + i));
        p.parts.push_back(std::move(fresh));
        out.partition = std::move(p);
    }
    for (const auto& m : inst.matchings) {
        Matching c = m;
        c.canonicalize();
        for (std::size_t i = 0; i < c.edges.size(); ++i)
            c.edges[i].vertices.insert(static_cast<VertexId>(inst.num_vertices + i));
        c.canonicalize();
        out.matchings.push_back(std::move(c));
    }
    out.metadata["N"] = std::to_string(out.matchings.size());
    return out;
}

Instance t2_complete_construction(std::size_t r) {
    if (r < 2) throw DomainError("t2_complete_construction: r must be at least 2");
    Instance inst;
    inst.r = r;
    inst.t = 2;
    inst.num_vertices = 2 * r;
    for (const auto& rest : combinations(2 * r - 1, r - 1)) {
        VertexSet s{0};
        for (auto v : rest) s.insert(static_cast<VertexId>(v + 1));
        VertexSet comp;
        for (std::size_t v = 0; v < 2 * r; ++v)
            if (!s.contains(static_cast<VertexId>(v))) comp.insert(static_cast<VertexId>(v));
        inst.matchings.push_back(Matching{Edge{s}, Edge{comp}});
    }
    inst.metadata["generator"] = "t2-complete";
    inst.metadata["N"] = std::to_string(inst.matchings.size());
    return inst;
}

Instance t2_partite_construction(std::size_t r) {
    if (r < 2) throw DomainError("t2_partite_construction: r must be at least 2");
    Instance inst = partite_shell(r, 2);
    for (std::size_t bits = 0; bits < (std::size_t{1} << (r - 1)); ++bits) {
        VertexSet s{0}, comp{1};
        for (std::size_t p = 1; p < r; ++p) {
            // Highest part varies slowest so the list is lexicographic.
            const bool high = (bits >> (r - 1 - p)) & 1U;
            s.insert(static_cast<VertexId>(2 * p + (high ? 1 : 0)));
            comp.insert(static_cast<VertexId>(2 * p + (high ? 0 : 1)));
        }
        inst.matchings.push_back(Matching{Edge{s}, Edge{comp}});
    }
    inst.metadata["generator"] = "t2-partite";
    inst.metadata["N"] = std::to_string(inst.matchings.size());
    return inst;
}

} // namespace rainbow
