#pragma once

#include <cstdio>
#include <string>

namespace sirs::detail {

// 17 significant digits: re-parsing yields the same double.
inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace sirs::detail
