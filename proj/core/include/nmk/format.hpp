#pragma once

#include <cstdio>
#include <string>

namespace nmk {

/// Shortest-ish decimal form with 17 significant digits: round-trips every
/// double and is locale-independent.
inline std::string to_string_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace nmk
