#pragma once

#include <array>
#include <cstddef>

namespace blocklcs {

/// 3x3 proportions p_ij indexed by (x length, y length) - (l - 1), so row and
/// column 0, 1, 2 stand for lengths l-1, l, l+1.
using PairMatrix = std::array<std::array<double, 3>, 3>;
using PairCounts = std::array<std::array<std::size_t, 3>, 3>;

inline constexpr std::size_t kShort = 0;
inline constexpr std::size_t kMid = 1;
inline constexpr std::size_t kLong = 2;

}  // namespace blocklcs
