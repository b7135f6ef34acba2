#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace hqa {

std::string read_file(const std::filesystem::path& path);

/// Writes via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Parses one JSON value per non-blank line. Throws ParseError with the line number.
std::vector<nlohmann::json> read_json_lines(const std::filesystem::path& path);

}  // namespace hqa
