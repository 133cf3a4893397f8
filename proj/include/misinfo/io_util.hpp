#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace misinfo {

// Reads the whole file; throws IoError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Splits into lines on LF, dropping one trailing CR per line (CRLF input).
// A trailing newline does not produce a final empty line.
std::vector<std::string> split_lines(const std::string& content);

std::vector<std::string> split_tabs(const std::string& line);

std::string trim(const std::string& s);

std::string to_lower(const std::string& s);

// Writes content to path via a temporary file plus rename, so failed runs
// never leave a truncated artifact behind.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Fixed-point formatting, e.g. format_fixed(0.5, 6) == "0.500000".
std::string format_fixed(double value, int decimals);

}  // namespace misinfo
