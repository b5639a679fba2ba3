#pragma once

#include <limits>

namespace cirp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Comparison tolerance for all derived time quantities.
inline constexpr double kTimeEps = 1e-9;

} // namespace cirp
