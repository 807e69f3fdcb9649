#include "sforge/report.hpp"

#include <cstdio>

namespace sforge {

std::string format9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return std::string(buf);
}

}  // namespace sforge
