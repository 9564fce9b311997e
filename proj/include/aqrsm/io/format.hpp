#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

namespace aqrsm::io {

/// 12 significant digits; scientific notation when the decimal exponent is
/// outside [-6, 6). Fixed-notation output drops trailing zeros. Non-finite
/// values format as the empty string.
inline std::string format_number(double x) {
  if (!std::isfinite(x)) return {};
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  const char* e = std::strchr(buf, 'e');
  const int exponent = e ? std::atoi(e + 1) : 0;
  if (exponent < -6 || exponent >= 6) return buf;
  std::snprintf(buf, sizeof buf, "%.*f", 11 - exponent, x);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

inline std::string format_optional(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

/// Joins fields with commas and terminates with LF. Fields never contain
/// separators (numbers, identifiers), so no quoting is applied.
inline std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

}  // namespace aqrsm::io
