#pragma once

#include <cstdio>
#include <string>

namespace hypflow {

// Formats a double with 17 significant digits (lossless round-trip).
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace hypflow
