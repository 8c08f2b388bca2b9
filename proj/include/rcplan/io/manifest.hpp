#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rcplan::io {

/// Everything needed to reproduce a run. Carries no timestamps or host
/// data, so equal runs give byte-identical manifests.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::string input_path;
  std::string input_sha256;
  std::vector<std::string> outputs;
};

std::string to_json(const RunManifest& m);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

}  // namespace rcplan::io
