#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace uavnet {

/// Shortest decimal form that parses back to the same double.
/// Infinities are written as "inf" / "-inf".
std::string format_number(double value);

/// Writes `contents` to `path`, creating parent directories.
/// Throws IoError naming the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace uavnet
