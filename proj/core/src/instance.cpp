#include "rainbow/instance.hpp"

#include <algorithm>
#include <sstream>

namespace rainbow {

bool Matching::contains(const Edge& e) const {
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

void Matching::canonicalize() { std::sort(edges.begin(), edges.end()); }

std::optional<std::size_t> Partition::part_of(VertexId v) const {
    for (std::size_t p = 0; p < parts.size(); ++p)
        if (parts[p].contains(v)) return p;
    return std::nullopt;
}

void Instance::canonicalize() {
    for (auto& m : matchings) m.canonicalize();
}

Partition consecutive_partition(std::size_t n, std::size_t parts) {
    Partition p;
    if (parts == 0) return p;
    const std::size_t block = n / parts;
    p.parts.resize(parts);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t idx = std::min(block == 0 ? parts - 1 : v / block, parts - 1);
        p.parts[idx].insert(static_cast<VertexId>(v));
    }
    return p;
}

std::string to_string(Violation::Rule rule) {
    switch (rule) {
    case Violation::Rule::ParameterRange: return "parameter out of range";
    case Violation::Rule::VertexOutOfRange: return "index out of range";
    case Violation::Rule::EdgeArity: return "edge arity";
    case Violation::Rule::MatchingSize: return "matching size";
    case Violation::Rule::EdgesNotDisjoint: return "edges not disjoint";
    case Violation::Rule::EdgeNotTransversal: return "edge not transversal";
    case Violation::Rule::PartitionShape: return "partition shape";
    case Violation::Rule::PartitionOverlap: return "partition overlap";
    }
    return "unknown";
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& v : violations) {
        os << to_string(v.rule);
        if (v.matching) os << " [matching " << *v.matching;
        if (v.edge) os << ", edge " << *v.edge;
        if (v.matching) os << "]";
        os << ": " << v.message << '\n';
    }
    return os.str();
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport rep;
    auto add = [&](Violation::Rule rule, std::optional<std::size_t> m, std::optional<std::size_t> e, std::string msg) {
        rep.violations.push_back({rule, m, e, std::move(msg)});
    };

    if (inst.r == 0) add(Violation::Rule::ParameterRange, {}, {}, "r must be positive");
    if (inst.t == 0) add(Violation::Rule::ParameterRange, {}, {}, "t must be positive");

    const auto n = static_cast<VertexId>(inst.num_vertices);

    if (inst.partition) {
        const auto& parts = inst.partition->parts;
        if (parts.size() != inst.r)
            add(Violation::Rule::PartitionShape, {}, {},
                "partition has " + std::to_string(parts.size()) + " parts, expected r=" + std::to_string(inst.r));
        VertexSet seen;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            if (parts[p].bound() > n)
                add(Violation::Rule::VertexOutOfRange, {}, {}, "partition part " + std::to_string(p) + " names a vertex >= num_vertices");
            if (parts[p].intersects(seen))
                add(Violation::Rule::PartitionOverlap, {}, {}, "partition part " + std::to_string(p) + " overlaps an earlier part");
            seen |= parts[p];
        }
    }

    for (std::size_t mi = 0; mi < inst.matchings.size(); ++mi) {
        const auto& m = inst.matchings[mi];
        if (m.edges.size() != inst.t)
            add(Violation::Rule::MatchingSize, mi, {},
                "has " + std::to_string(m.edges.size()) + " edges, expected t=" + std::to_string(inst.t));
        VertexSet covered;
        for (std::size_t ei = 0; ei < m.edges.size(); ++ei) {
            const auto& e = m.edges[ei];
            if (e.arity() != inst.r)
                add(Violation::Rule::EdgeArity, mi, ei,
                    e.vertices.to_string() + " has " + std::to_string(e.arity()) + " vertices, expected r=" + std::to_string(inst.r));
            if (e.vertices.bound() > n)
                add(Violation::Rule::VertexOutOfRange, mi, ei, e.vertices.to_string() + " exceeds num_vertices=" + std::to_string(n));
            if (e.vertices.intersects(covered))
                add(Violation::Rule::EdgesNotDisjoint, mi, ei, e.vertices.to_string() + " shares a vertex with an earlier edge");
            covered |= e.vertices;
            if (inst.partition) {
                for (std::size_t p = 0; p < inst.partition->parts.size(); ++p) {
                    const auto hits = (e.vertices & inst.partition->parts[p]).size();
                    if (hits != 1) {
                        add(Violation::Rule::EdgeNotTransversal, mi, ei,
                            e.vertices.to_string() + " meets part " + std::to_string(p) + " in " + std::to_string(hits) + " vertices");
                        break;
                    }
                }
            }
        }
    }
    return rep;
}

CertificateVerdict check_certificate(const Instance& inst, const RainbowCertificate& cert) {
    std::vector<bool> used(inst.matchings.size(), false);
    VertexSet covered;
    for (std::size_t i = 0; i < cert.picks.size(); ++i) {
        const auto& p = cert.picks[i];
        const std::string where = "pick " + std::to_string(i);
        if (p.color >= inst.matchings.size())
            return {false, where + ": color " + std::to_string(p.color) + " out of range (N=" + std::to_string(inst.matchings.size()) + ")"};
        if (used[p.color]) return {false, where + ": color " + std::to_string(p.color) + " repeated"};
        used[p.color] = true;
        if (!inst.matchings[p.color].contains(p.edge))
            return {false, where + ": edge " + p.edge.vertices.to_string() + " not in matching " + std::to_string(p.color)};
        if (p.edge.vertices.intersects(covered))
            return {false, where + ": edge " + p.edge.vertices.to_string() + " not disjoint from earlier picks"};
        covered |= p.edge.vertices;
    }
    return {true, {}};
}

} // namespace rainbow
