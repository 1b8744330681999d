#include <algorithm>
#include <map>
#include <memory>
#include <random>

#include "rainbow/multilinear.hpp"

namespace rainbow {

namespace {

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt c = 1;
    for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

BigInt power(std::size_t b, std::size_t e) {
    BigInt p = 1;
    for (std::size_t i = 0; i < e; ++i) p *= b;
    return p;
}

struct VertexVectors {
    PrimeField field;
    bool partite = false;
    std::size_t r = 0;
    std::size_t t = 0;
    // Non-partite: one vector per vertex in F^{rt}. Partite: one per vertex in its part's F^t.
    std::vector<FieldVector> z;
    std::vector<std::size_t> part;
    std::vector<Edge> edges;

    std::uint64_t phi(std::span<const std::size_t> ids) const {
        std::vector<VertexId> vs;
        for (auto id : ids) edges.at(id).vertices.for_each([&](VertexId v) { vs.push_back(v); });
        std::vector<VertexId> sorted = vs;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;
        if (vs.size() != r * t) throw DomainError("wedge phi: expected t edges of size r");

        std::uint64_t det = 1;
        if (!partite) {
            std::vector<std::vector<std::uint64_t>> m;
            m.reserve(vs.size());
            for (auto v : vs) m.push_back(z.at(v).coords);
            det = field.determinant(std::move(m));
        } else {
            std::vector<std::vector<std::vector<std::uint64_t>>> blocks(r);
            for (auto v : vs) blocks.at(part.at(v)).push_back(z.at(v).coords);
            for (auto& b : blocks) {
                if (b.size() != t) throw DomainError("wedge phi: edge does not meet every part once");
                det = field.mul(det, field.determinant(std::move(b)));
            }
        }
        if (det == 0) throw GeneralPositionError("wedge phi: singular determinant on distinct vertices");
        return det;
    }
};

bool determinant_is_multilinear(const PrimeField& f, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, f.modulus() - 1);
    auto row = [&] {
        FieldVector v;
        v.coords.resize(dim);
        for (auto& c : v.coords) c = dist(rng);
        return v;
    };
    for (int probe = 0; probe < 8; ++probe) {
        std::vector<FieldVector> rows;
        for (std::size_t i = 0; i < dim; ++i) rows.push_back(row());
        const std::size_t pos = rng() % dim;
        const FieldVector u = row();
        const FieldVector v = row();
        const std::uint64_t a = dist(rng);
        const std::uint64_t b = dist(rng);
        auto det_with = [&](const FieldVector& x) {
            std::vector<std::vector<std::uint64_t>> m;
            for (std::size_t i = 0; i < dim; ++i) m.push_back(i == pos ? x.coords : rows[i].coords);
            return f.determinant(std::move(m));
        };
        if (det_with(combine(f, a, u, b, v)) != f.add(f.mul(a, det_with(u)), f.mul(b, det_with(v)))) return false;
    }
    return true;
}

WedgeSetup build_wedge(const Instance& inst, std::uint64_t seed, const GeneralPositionOptions& opts) {
    auto vv = std::make_shared<VertexVectors>(VertexVectors{PrimeField(opts.q), inst.partition.has_value(), inst.r,
                                                            inst.t, {}, {}, {}});
    for (const auto& m : inst.matchings)
        for (const auto& e : m.edges) vv->edges.push_back(e);
    std::sort(vv->edges.begin(), vv->edges.end());
    vv->edges.erase(std::unique(vv->edges.begin(), vv->edges.end()), vv->edges.end());

    const std::size_t n = inst.num_vertices;
    if (!vv->partite) {
        vv->z = general_position_vectors(std::max(n, inst.r * inst.t), inst.r * inst.t, seed, opts);
    } else {
        vv->z.resize(n);
        vv->part.assign(n, 0);
        const auto& parts = inst.partition->parts;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            const auto members = parts[p].to_vector();
            const auto zs =
                general_position_vectors(std::max(members.size(), inst.t), inst.t, seed + 7919 * (p + 1), opts);
            for (std::size_t i = 0; i < members.size(); ++i) {
                vv->z.at(members[i]) = zs[i];
                vv->part.at(members[i]) = p;
            }
        }
    }

    WedgeSetup out;
    out.partite = vv->partite;
    out.seed = seed;
    out.edges = vv->edges;
    out.family.t = inst.t;
    out.family.dim = vv->partite ? power(inst.t, inst.r) : binomial(inst.r * inst.t, inst.r);
    for (const auto& m : inst.matchings) {
        Matching c = m;
        c.canonicalize();
        std::vector<std::size_t> ids;
        for (const auto& e : c.edges)
            ids.push_back(static_cast<std::size_t>(std::lower_bound(vv->edges.begin(), vv->edges.end(), e) -
                                                   vv->edges.begin()));
        out.family.tuples.push_back(std::move(ids));
    }
    out.phi.modulus = opts.q;
    out.phi.t = inst.t;
    out.phi.eval = [vv](std::span<const std::size_t> ids) { return vv->phi(ids); };
    const std::size_t det_dim = vv->partite ? inst.t : inst.r * inst.t;
    out.phi.linearity_probe = [f = vv->field, det_dim](std::uint64_t s) { return determinant_is_multilinear(f, det_dim, s); };
    check_tuple_family(out.family, out.phi);
    return out;
}

} // namespace

WedgeSetup wedge_phi_matching(const Instance& inst, std::uint64_t seed, const GeneralPositionOptions& opts) {
    if (const auto rep = validate_instance(inst); !rep.ok())
        throw DomainError("wedge_phi_matching: invalid instance: " + rep.summary());
    for (std::size_t attempt = 0; attempt <= opts.retries; ++attempt) {
        try {
            WedgeSetup w = build_wedge(inst, seed + attempt * 0x632BE59BD9B4E019ULL, opts);
            w.reseeds = attempt;
            return w;
        } catch (const GeneralPositionError&) {
            if (attempt == opts.retries) throw;
        }
    }
    throw GeneralPositionError("wedge_phi_matching: retries exhausted");
}

nlohmann::ordered_json to_json(const AlgebraicOutcome& out) {
    nlohmann::ordered_json j = to_json(out.outcome);
    j["method"] = "algebraic";
    j["partite"] = out.partite;
    j["dim"] = out.dim.str();
    j["threshold_general"] = out.general_threshold.str();
    j["threshold_partite"] = out.partite_threshold.str();
    j["reseeds"] = out.reseeds;
    if (out.raw) j["engine"] = to_string(*out.raw);
    return j;
}

AlgebraicOutcome rainbow_via_multilinear(const Instance& inst, const SearchBudget& budget, std::uint64_t seed) {
    if (const auto rep = validate_instance(inst); !rep.ok())
        throw DomainError("rainbow_via_multilinear: invalid instance: " + rep.summary());
    AlgebraicOutcome out;
    out.partite = inst.partition.has_value();
    out.general_threshold = BigInt(inst.t - 1) * binomial(inst.t * inst.r, inst.r);
    out.partite_threshold = BigInt(inst.t - 1) * power(inst.t, inst.r);
    out.dim = out.partite ? power(inst.t, inst.r) : binomial(inst.t * inst.r, inst.r);
    out.outcome.status = SearchStatus::Indeterminate;
    if (inst.matchings.empty() || inst.t == 0) return out;

    const GeneralPositionOptions gp;
    MultilinearOptions opts;
    opts.max_evaluations = budget.max_nodes;
    for (std::size_t attempt = 0; attempt <= gp.retries; ++attempt) {
        try {
            const WedgeSetup w = wedge_phi_matching(inst, seed + attempt * 0xD1B54A32D192ED03ULL, gp);
            const MultilinearResult res = multilinear_rainbow_find(w.family, w.phi, opts);
            out.reseeds += attempt + w.reseeds;
            out.raw = res.status;
            out.outcome.nodes_visited = res.evaluations;
            if (res.status != MultilinearStatus::Found) return out;
            RainbowCertificate cert;
            for (std::size_t i = 0; i < res.indices.size(); ++i)
                cert.picks.push_back({res.indices[i], w.edges[w.family.tuples[res.indices[i]][res.choices[i]]]});
            std::sort(cert.picks.begin(), cert.picks.end(), [](const Pick& a, const Pick& b) { return a.color < b.color; });
            if (const auto v = check_certificate(inst, cert); !v)
                throw std::logic_error("rainbow_via_multilinear: invalid certificate: " + v.reason);
            out.outcome.status = SearchStatus::Found;
            out.outcome.certificate = std::move(cert);
            return out;
        } catch (const GeneralPositionError&) {
            if (attempt == gp.retries) throw;
        }
    }
    return out;
}

} // namespace rainbow
