#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace specden::csv {

/// Shortest round-trip representation; +inf is written as `inf`.
std::string format_double(double v);

/// Parses a number as written by format_double (accepts `inf`).
double parse_double(std::string_view text);

/// Splits one line on commas. No quoting: every field in this project is
/// numeric or a bare identifier.
std::vector<std::string> split(std::string_view line);

/// Reads the next line, stripping a trailing '\r'. Returns false at EOF.
bool read_line(std::istream& in, std::string& line);

}  // namespace specden::csv
