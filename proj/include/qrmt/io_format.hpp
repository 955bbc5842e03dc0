#pragma once

#include <cstdio>
#include <string>

namespace qrmt {

/// Locale-independent decimal with 17 significant digits; enough to
/// round-trip any double exactly.
inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline constexpr const char* kVersion = "qrmt 0.1.0";

}  // namespace qrmt
