#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace fid {

// Shortest decimal string that parses back to the same double (round-trip safe).
std::string format_double(double value);

// Fixed-point formatting, e.g. format_fixed(15.41, 4) -> "15.4100".
std::string format_fixed(double value, int places);

// Strict parse of a full token; throws std::runtime_error on trailing junk or
// non-finite input.
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

// Writes to "<path>.tmp" then renames, so readers never observe a partial file.
void atomic_write_text(const std::filesystem::path& path, std::string_view content);

}  // namespace fid
