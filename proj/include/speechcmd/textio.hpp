#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace speechcmd {

// Formats a double with enough digits to round-trip exactly (%.17g).
std::string fmt_double(double v);

// Shorter form for human-facing reports.
std::string fmt_fixed(double v, int decimals);

std::string trim(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

// Locale-independent strtod wrapper. Throws DataError on garbage.
double parse_double(std::string_view s, const std::string& context);
long parse_long(std::string_view s, const std::string& context);

// Reads a whole file into memory; throws DataError if unreadable.
std::vector<unsigned char> read_binary_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_binary_file(const std::string& path, const std::vector<unsigned char>& bytes);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace speechcmd
