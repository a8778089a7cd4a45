#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace difflat {

// Shortest form is not used on purpose: every numeric field is written with
// 17 significant digits so text output round-trips bit-exactly.
std::string format_double(double value);

std::vector<std::string_view> split_whitespace(std::string_view line);
std::string_view trim(std::string_view s);

// Strict numeric parsing: the whole token must be consumed.
bool parse_double(std::string_view token, double& out);
bool parse_int64(std::string_view token, long long& out);

}  // namespace difflat
