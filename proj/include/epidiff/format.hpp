#pragma once

#include <string>

namespace epidiff {

/// Shortest round-trip-safe text for a double: "%.17g", with nan/inf spelled out.
std::string format_double(double v);

/// Parses text written by format_double (and ordinary decimal/scientific input).
/// Throws ConfigError on malformed text.
double parse_double(const std::string& text, const std::string& what);

}  // namespace epidiff
