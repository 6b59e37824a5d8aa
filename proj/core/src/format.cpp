#include "flightlab/format.hpp"

#include <cstdio>

namespace flightlab {

std::string format_real(double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace flightlab
