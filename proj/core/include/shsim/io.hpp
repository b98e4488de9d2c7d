#pragma once

#include <filesystem>
#include <string>

namespace shsim {

/// Writes via a temp file in the same directory, then renames into place.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Locale-independent fixed formatting used by every emitted file.
std::string format_double(double value, int precision = 6);

}  // namespace shsim
