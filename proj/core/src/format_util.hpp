#pragma once

#include <cstdio>
#include <string>

namespace spectail::detail {

// 17 significant digits round-trip any double exactly through strtod.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace spectail::detail
