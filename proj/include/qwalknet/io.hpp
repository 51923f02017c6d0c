#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace qwalknet::io {

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Writes `content` and a `<path>.meta.json` sidecar holding `meta` plus the
/// library version.
void write_with_meta(const std::filesystem::path& path, std::string_view content, const nlohmann::json& meta);

std::string read_file(const std::filesystem::path& path);

}  // namespace qwalknet::io
