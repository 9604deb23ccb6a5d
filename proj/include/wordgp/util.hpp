#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wordgp {

// Shortest-round-trip decimal form with a '.' decimal point, for CSV and
// embedding files; parsing it back recovers the exact double.
std::string format_double(double value);

std::string_view trim(std::string_view s);

// Splits on runs of ASCII whitespace; no empty tokens.
std::vector<std::string> split_whitespace(std::string_view s);

std::string to_lower_ascii(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Parses a double without locale effects; throws on trailing garbage.
double parse_double(std::string_view s, const std::string& context);
long long parse_int(std::string_view s, const std::string& context);

}  // namespace wordgp
