#pragma once

#include <string>

namespace endobench {

// Metric cells: 6 significant digits, shortest form ("%.6g").
[[nodiscard]] std::string format_metric(double value);

// DERS cells: fixed 2 decimals.
[[nodiscard]] std::string format_score(double value);

// Fixed decimals with an explicit count.
[[nodiscard]] std::string format_fixed(double value, int decimals);

}  // namespace endobench
