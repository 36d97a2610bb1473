#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace convdist {

std::string trim(const std::string& s);

// split on `sep` at parenthesis depth zero (cube tuples carry commas)
std::vector<std::string> split_top_level(const std::string& text, char sep);

double parse_double(const std::string& text);
std::uint64_t parse_u64(const std::string& text);
bool parse_bool(const std::string& text);

std::string format_g17(double v);

}  // namespace convdist
