#include "rainbow/instance_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace rainbow {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json edge_to_json(const Edge& e) {
    ordered_json arr = ordered_json::array();
    e.vertices.for_each([&](VertexId v) { arr.push_back(v); });
    return arr;
}

std::string encode(const Instance& input) {
    Instance inst = input;
    inst.canonicalize();

    ordered_json doc;
    doc["r"] = inst.r;
    doc["t"] = inst.t;
    doc["num_vertices"] = inst.num_vertices;
    if (inst.partition) {
        ordered_json parts = ordered_json::array();
        for (const auto& p : inst.partition->parts) parts.push_back(edge_to_json(Edge{p}));
        doc["partition"] = std::move(parts);
    } else {
        doc["partition"] = nullptr;
    }
    ordered_json ms = ordered_json::array();
    for (const auto& m : inst.matchings) {
        ordered_json edges = ordered_json::array();
        for (const auto& e : m.edges) edges.push_back(edge_to_json(e));
        ms.push_back(std::move(edges));
    }
    doc["matchings"] = std::move(ms);
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : inst.metadata) meta[k] = v;
    doc["metadata"] = std::move(meta);
    return doc.dump() + "\n";
}

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::size_t as_count(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw DecodeError(path, "expected a non-negative integer");
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw DecodeError(path, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

VertexSet as_vertex_set(const json& j, const std::string& path, std::size_t num_vertices) {
    if (!j.is_array()) throw DecodeError(path, "expected an array of vertex indices");
    VertexSet s;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const auto v = as_count(j[i], p);
        if (v >= num_vertices)
            throw DecodeError(p, "index out of range (" + std::to_string(v) + " >= num_vertices=" + std::to_string(num_vertices) + ")");
        const auto id = static_cast<VertexId>(v);
        if (s.contains(id)) throw DecodeError(p, "duplicate vertex " + std::to_string(v));
        s.insert(id);
    }
    return s;
}

} // namespace

Instance decode(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw DecodeError(line_col(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    if (!doc.is_object()) throw DecodeError("$", "expected a JSON object");

    static const char* const kKeys[] = {"r", "t", "num_vertices", "partition", "matchings", "metadata"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        bool known = false;
        for (const char* k : kKeys) known = known || it.key() == k;
        if (!known) throw DecodeError("$." + it.key(), "unknown field");
    }
    for (const char* k : {"r", "t", "num_vertices", "matchings"})
        if (!doc.contains(k)) throw DecodeError(std::string("$.") + k, "missing field");

    Instance inst;
    inst.r = as_count(doc["r"], "$.r");
    inst.t = as_count(doc["t"], "$.t");
    inst.num_vertices = as_count(doc["num_vertices"], "$.num_vertices");
    if (inst.num_vertices > std::numeric_limits<VertexId>::max()) throw DecodeError("$.num_vertices", "too large");

    if (doc.contains("partition") && !doc["partition"].is_null()) {
        const auto& parts = doc["partition"];
        if (!parts.is_array()) throw DecodeError("$.partition", "expected null or an array of parts");
        Partition p;
        for (std::size_t i = 0; i < parts.size(); ++i)
            p.parts.push_back(as_vertex_set(parts[i], "$.partition[" + std::to_string(i) + "]", inst.num_vertices));
        inst.partition = std::move(p);
    }

    const auto& ms = doc["matchings"];
    if (!ms.is_array()) throw DecodeError("$.matchings", "expected an array of matchings");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string mp = "$.matchings[" + std::to_string(i) + "]";
        if (!ms[i].is_array()) throw DecodeError(mp, "expected an array of edges");
        Matching m;
        for (std::size_t e = 0; e < ms[i].size(); ++e)
            m.edges.emplace_back(as_vertex_set(ms[i][e], mp + "[" + std::to_string(e) + "]", inst.num_vertices));
        inst.matchings.push_back(std::move(m));
    }

    if (doc.contains("metadata")) {
        const auto& meta = doc["metadata"];
        if (!meta.is_object()) throw DecodeError("$.metadata", "expected an object of strings");
        for (auto it = meta.begin(); it != meta.end(); ++it) {
            if (!it.value().is_string()) throw DecodeError("$.metadata." + it.key(), "expected a string");
            inst.metadata[it.key()] = it.value().get<std::string>();
        }
    }
    inst.canonicalize();
    return inst;
}

Instance read_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return decode(ss.str());
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << encode(inst);
}

ordered_json certificate_to_json(const RainbowCertificate& cert) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : cert.picks) {
        ordered_json pick;
        pick["color"] = p.color;
        pick["edge"] = edge_to_json(p.edge);
        arr.push_back(std::move(pick));
    }
    return arr;
}

RainbowCertificate certificate_from_json(const json& j) {
    if (!j.is_array()) throw DecodeError("$", "certificate must be an array of picks");
    RainbowCertificate cert;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = "$[" + std::to_string(i) + "]";
        if (!j[i].is_object() || !j[i].contains("color") || !j[i].contains("edge"))
            throw DecodeError(p, "pick must have color and edge");
        Pick pick;
        pick.color = as_count(j[i]["color"], p + ".color");
        pick.edge = Edge{as_vertex_set(j[i]["edge"], p + ".edge", std::numeric_limits<VertexId>::max())};
        cert.picks.push_back(std::move(pick));
    }
    return cert;
}

} // namespace rainbow
