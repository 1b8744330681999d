#include "rainbow/lattice_probes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rainbow/prime_field.hpp"

namespace rainbow {

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

std::vector<PrimeField::Elem> indicator(const TupleLattice& lat, std::uint64_t z) {
    std::vector<PrimeField::Elem> row(lat.r() * lat.t(), 0);
    const auto loc = lat.locals(z);
    for (std::size_t q = 0; q < lat.r(); ++q) row[q * lat.t() + loc[q]] = 1;
    return row;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

std::size_t span_dimension(const TupleLattice& lat, const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                           std::uint64_t P) {
    const PrimeField F(P);
    std::vector<std::vector<PrimeField::Elem>> rows;
    for (auto z : a) rows.push_back(indicator(lat, z));
    for (auto z : b) rows.push_back(indicator(lat, z));
    return F.rank(std::move(rows));
}

bool ComponentGraph::diagonal_symmetric() const {
    for (std::size_t k = 0; k < left.size(); ++k)
        if (left[k] != right[k]) return false;
    return true;
}

ComponentGraph component_graph(const TupleLattice& lat, const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    const std::size_t t = lat.t();
    ComponentGraph g;
    g.t = t;
    UnionFind uf(2 * t);
    for (std::size_t i = 0; i < t; ++i) {
        const auto vi = lat.vertices(a[i]);
        for (std::size_t j = 0; j < t; ++j) {
            if (vi.intersects(lat.vertices(b[j]))) {
                g.edges.emplace_back(i, j);
                uf.unite(i, t + j);
            }
        }
    }
    std::vector<std::int64_t> comp_of(2 * t, -1);
    for (std::size_t v = 0; v < 2 * t; ++v) {
        const auto root = uf.find(v);
        if (comp_of[root] < 0) {
            comp_of[root] = static_cast<std::int64_t>(g.left.size());
            g.left.emplace_back();
            g.right.emplace_back();
        }
        const auto k = static_cast<std::size_t>(comp_of[root]);
        if (v < t)
            g.left[k].push_back(v);
        else
            g.right[k].push_back(v - t);
    }
    return g;
}

bool CountingProbeReport::ok() const {
    const bool rows_ok = std::all_of(rows.begin(), rows.end(), [](const DimensionRow& r) { return r.within_bound; });
    return rows_ok && d_out_of_range == 0 && component_bound_failures == 0 && partition_bound_failures == 0 &&
           asymmetric_components == 0;
}

CountingProbeReport counting_probe(std::size_t r, std::size_t t, std::uint64_t fixed_index, std::uint64_t P,
                                   std::uint64_t lattice_cap) {
    if (t < 3) throw DomainError("counting_probe: t must be at least 3");
    if (r < 2) throw DomainError("counting_probe: r must be at least 2");
    const TupleLattice lat(r, t);
    if (lat.num_tuples() > lattice_cap) throw DomainError("counting_probe: lattice above the cap");
    const auto n_tuples = lat.num_tuples().convert_to<std::uint64_t>();
    if (fixed_index >= n_tuples) throw DomainError("counting_probe: fixed tuple index out of range");

    CountingProbeReport rep;
    rep.r = r;
    rep.t = t;
    rep.P = P;
    rep.fixed_index = fixed_index;
    std::vector<std::uint64_t> z, zp;
    lat.tuple(fixed_index, z);

    std::map<std::size_t, std::uint64_t> by_d;
    std::map<std::vector<std::vector<std::size_t>>, std::uint64_t> by_partition;
    for (std::uint64_t k = 0; k < n_tuples; ++k) {
        if (k == fixed_index) continue;
        lat.tuple(k, zp);
        bool shares = false;
        for (std::size_t i = 0; i < t; ++i) shares = shares || z[i] == zp[i];
        if (!shares) continue;
        ++rep.sharing;
        const auto d = span_dimension(lat, z, zp, P);
        ++by_d[d];
        if (d < t + 1 || d > 2 * t - 1) ++rep.d_out_of_range;
        const auto g = component_graph(lat, z, zp);
        if (g.num_components() + d < 2 * t) ++rep.component_bound_failures;
        if (g.num_components() + d == 2 * t) ++rep.component_equality;
        if (!g.diagonal_symmetric()) ++rep.asymmetric_components;
        ++by_partition[g.left];
    }

    for (const auto& [d, count] : by_d) {
        DimensionRow row;
        row.d = d;
        row.count = count;
        const std::size_t e = t - 2;
        const std::size_t extra = d > t ? (r - 1) * (d - t) : 0;
        const BigInt lhs = ipow(BigInt(count), e);
        const BigInt rhs = ipow(BigInt(t), t * e) * ipow(factorial(t - 1), extra);
        row.within_bound = lhs <= rhs;
        row.bound = std::pow(static_cast<double>(t), static_cast<double>(t)) *
                    std::pow(factorial(t - 1).convert_to<double>(), static_cast<double>(extra) / static_cast<double>(e));
        rep.rows.push_back(row);
    }

    // For the fixed z, each component partition admits at most (prod |I_k|!)^{r-1} tuples z'.
    // The fixed tuple itself has the all-singletons partition and is added back there.
    for (const auto& [parts, count] : by_partition) {
        ++rep.partition_classes;
        BigInt prod = 1;
        for (const auto& p : parts) prod *= factorial(p.size());
        const BigInt bound = ipow(prod, r - 1);
        const bool singletons = parts.size() == t;
        if (BigInt(count + (singletons ? 1 : 0)) > bound) ++rep.partition_bound_failures;
    }
    return rep;
}

FactorialInequalityReport factorial_inequality_check(std::size_t max_b) {
    FactorialInequalityReport rep;
    rep.max_b = max_b;
    for (std::size_t b = 1; b <= max_b; ++b) {
        for (std::size_t a = 1; a <= b; ++a) {
            ++rep.checked;
            if (ipow(factorial(a), b - 1) > ipow(factorial(b), a - 1)) ++rep.failures;
        }
    }
    return rep;
}

} // namespace rainbow
