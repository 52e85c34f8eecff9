#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace speedscale {

/// 12 significant digits, '.' decimal point regardless of locale.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  for (auto& ch : s)
    if (ch == ',') ch = '.';
  return s;
}

}  // namespace speedscale
