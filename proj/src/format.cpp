#include "endobench/format.hpp"

#include <cmath>
#include <cstdio>

namespace endobench {
namespace {

std::string print(const char* fmt, int precision, double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, fmt, precision, value);
  std::string out(buf, static_cast<std::size_t>(n));
  // Avoid "-0" style output for values that round to zero.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

}  // namespace

std::string format_metric(double value) { return print("%.*g", 6, value); }

std::string format_score(double value) { return print("%.*f", 2, value); }

std::string format_fixed(double value, int decimals) { return print("%.*f", decimals, value); }

}  // namespace endobench
