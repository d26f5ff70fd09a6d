#include "epidiff/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "epidiff/errors.hpp"

namespace epidiff {

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& text, const std::string& what)
{
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (*end == ' ' || *end == '\t') {
        ++end;
    }
    if (end == begin || *end != '\0') {
        throw ConfigError(what + ": expected a number, got '" + text + "'");
    }
    return v;
}

}  // namespace epidiff
