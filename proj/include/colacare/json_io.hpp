#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace colacare {

using Json = nlohmann::json;

std::string read_text_file(const std::filesystem::path& path);

/// Writes through a sibling temp file and renames, creating parent
/// directories as needed.
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json read_json_file(const std::filesystem::path& path);

/// Two-space indented with a trailing newline. Object keys are sorted, so
/// equal values always produce equal bytes.
void write_json_file(const std::filesystem::path& path, const Json& value);

}  // namespace colacare
