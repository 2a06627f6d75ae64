#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace surfex {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& contents);

}  // namespace surfex
