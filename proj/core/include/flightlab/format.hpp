#pragma once

#include <string>

namespace flightlab {

/// Round-trip decimal text with 17 significant digits ("%.17g"); the CSV
/// writers use it so outputs are byte-stable.
std::string format_real(double v);

}  // namespace flightlab
