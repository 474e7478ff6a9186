#pragma once

#include <cstdio>
#include <string>

namespace smoothphi {

// Deterministic formatting for CSV/JSON emission (byte-identical across runs).
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace smoothphi
