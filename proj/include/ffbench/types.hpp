#pragma once

#include <cstdint>

namespace ffbench {

// Objective values are integers in [0, UB]; they double as frequency-table
// indexes, so they stay in a 64-bit unsigned type end to end.
using ObjectiveValue = std::uint64_t;

}  // namespace ffbench
