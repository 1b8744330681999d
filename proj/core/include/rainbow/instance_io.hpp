#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rainbow/instance.hpp"

namespace rainbow {

/// Malformed instance document. `where` is a line:column or a JSON field path.
class DecodeError : public std::runtime_error {
public:
    DecodeError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    [[nodiscard]] const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Canonical instance document: keys r, t, num_vertices, partition, matchings,
/// metadata in that order; edges ascending, edges sorted within matchings.
[[nodiscard]] std::string encode(const Instance& inst);
[[nodiscard]] Instance decode(std::string_view text);

[[nodiscard]] Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& inst);

[[nodiscard]] nlohmann::ordered_json edge_to_json(const Edge& e);
[[nodiscard]] nlohmann::ordered_json certificate_to_json(const RainbowCertificate& cert);
[[nodiscard]] RainbowCertificate certificate_from_json(const nlohmann::json& j);

} // namespace rainbow
