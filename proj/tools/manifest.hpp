#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace volkov::cli {

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// [{file, bytes, sha256}] for artifacts relative to `dir`.
nlohmann::ordered_json artifact_hashes(const std::filesystem::path& dir, const std::vector<std::string>& files);

}  // namespace volkov::cli
