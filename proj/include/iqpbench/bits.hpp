#pragma once

#include <bit>
#include <cstdint>

// Bit conventions used throughout:
//  - states x and masks alpha are unsigned integers of n bits, n <= 24;
//  - bit i of the written string x1...xn (left to right) is the (i-1)-th
//    least significant bit of the integer, so x1 is the LSB.

namespace iqpbench {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

constexpr int max_bits = 24;

inline int popcount(u32 v) { return std::popcount(v); }

// Walsh character phi_alpha(x) = (-1)^(alpha . x), values +1 / -1.
inline int walsh_character(u32 alpha, u32 x) {
  return (std::popcount(alpha & x) & 1) ? -1 : +1;
}

inline bool even_parity(u32 x) { return (std::popcount(x) & 1) == 0; }

}  // namespace iqpbench
