#pragma once

#include <cstdio>
#include <string>

namespace tvws {

/// Locale-independent fixed 4-decimal formatting used by every table writer.
inline std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace tvws
