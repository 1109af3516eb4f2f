#pragma once

// Small text helpers shared by the CSV readers and writers.

#include <string>
#include <string_view>
#include <vector>

namespace expdyn::text {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

/// Parses a double, accepting `inf`/`-inf`; throws std::invalid_argument.
double parse_double(std::string_view s);

long long parse_int(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);

std::string_view trim(std::string_view s);

/// Splits text into lines, dropping a trailing '\r' and empty last line.
std::vector<std::string_view> lines(std::string_view s);

/// Throws std::invalid_argument("line N: <what>").
[[noreturn]] void fail_at_line(std::size_t line, const std::string& what);

}  // namespace expdyn::text
