#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spg {

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);

double parse_double(std::string_view text);
long long parse_int(std::string_view text);

std::string read_text_file(const std::string& path);
std::vector<unsigned char> read_binary_file(const std::string& path);

// Write via a sibling temp file and rename, so readers never observe a
// partially written artifact.
void write_file_atomic(const std::string& path, std::string_view contents);
void write_file_atomic(const std::string& path, const void* data, std::size_t size);

// RFC 4180: quote fields containing comma, quote or newline; double quotes.
std::string csv_field(std::string_view raw);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace spg
