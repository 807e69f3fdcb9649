#pragma once

#include <cmath>
#include <iosfwd>
#include <string>

namespace sforge {

/// All numeric fields in machine-readable reports are rounded to nine
/// decimal places before serialization so report files are stable enough
/// to byte-compare.
inline double round9(double x) {
  if (!std::isfinite(x)) return x;
  return std::round(x * 1e9) / 1e9;
}

/// Formats with exactly nine decimals, for text output.
std::string format9(double x);

}  // namespace sforge
