#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rainbow/vertex_set.hpp"

namespace rainbow {

/// Parameter outside a generator's or algorithm's domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An r-subset of vertices. Arity is the mask's popcount.
struct Edge {
    VertexSet vertices;

    Edge() = default;
    explicit Edge(VertexSet vs) : vertices(std::move(vs)) {}
    Edge(std::initializer_list<VertexId> vs) : vertices(vs) {}

    [[nodiscard]] std::size_t arity() const noexcept { return vertices.size(); }
    [[nodiscard]] bool disjoint(const Edge& o) const noexcept { return !vertices.intersects(o.vertices); }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge& a, const Edge& b) { return a.vertices <=> b.vertices; }
};

struct Matching {
    std::vector<Edge> edges;

    Matching() = default;
    explicit Matching(std::vector<Edge> es) : edges(std::move(es)) {}
    Matching(std::initializer_list<Edge> es) : edges(es) {}

    [[nodiscard]] bool contains(const Edge& e) const;
    /// Sorts edges lexicographically (vertices inside an edge are already ascending).
    void canonicalize();

    friend bool operator==(const Matching&, const Matching&) = default;
};

struct Partition {
    std::vector<VertexSet> parts;

    /// Index of the part containing v, if any.
    [[nodiscard]] std::optional<std::size_t> part_of(VertexId v) const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// r and t together with N colored matchings. Color = position in `matchings`;
/// duplicates are legal.
struct Instance {
    std::size_t r = 0;
    std::size_t t = 0;
    std::size_t num_vertices = 0;
    std::optional<Partition> partition;
    std::vector<Matching> matchings;
    std::map<std::string, std::string> metadata;

    [[nodiscard]] std::size_t num_colors() const noexcept { return matchings.size(); }
    /// Sorts inside each matching; never reorders matchings.
    void canonicalize();

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Splits [0, n) into `parts` consecutive blocks; the remainder goes to the last block.
[[nodiscard]] Partition consecutive_partition(std::size_t n, std::size_t parts);

struct Violation {
    enum class Rule {
        ParameterRange,
        VertexOutOfRange,
        EdgeArity,
        MatchingSize,
        EdgesNotDisjoint,
        EdgeNotTransversal,
        PartitionShape,
        PartitionOverlap,
    };
    Rule rule;
    std::optional<std::size_t> matching;
    std::optional<std::size_t> edge;
    std::string message;
};

[[nodiscard]] std::string to_string(Violation::Rule rule);

struct ValidationReport {
    std::vector<Violation> violations;
    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] std::string summary() const;
};

[[nodiscard]] ValidationReport validate_instance(const Instance& inst);

struct Pick {
    std::size_t color = 0;
    Edge edge;
    friend bool operator==(const Pick&, const Pick&) = default;
};

/// Witness of a rainbow matching: distinct colors, member edges, pairwise disjoint.
struct RainbowCertificate {
    std::vector<Pick> picks;
    [[nodiscard]] std::size_t size() const noexcept { return picks.size(); }
    friend bool operator==(const RainbowCertificate&, const RainbowCertificate&) = default;
};

struct CertificateVerdict {
    bool valid = false;
    std::string reason;
    explicit operator bool() const noexcept { return valid; }
};

[[nodiscard]] CertificateVerdict check_certificate(const Instance& inst, const RainbowCertificate& cert);

} // namespace rainbow
