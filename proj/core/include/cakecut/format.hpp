#ifndef CAKECUT_FORMAT_HPP
#define CAKECUT_FORMAT_HPP

#include <cstdio>
#include <string>

namespace cakecut {

/// Fixed 12-significant-digit formatting for all user-facing output; keeps
/// CLI, CSV and SVG bytes reproducible across runs.
inline std::string format_g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace cakecut

#endif
