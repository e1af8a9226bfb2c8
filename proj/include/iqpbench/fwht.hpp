#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace iqpbench {

// In-place unnormalized Walsh-Hadamard transform in natural (Hadamard)
// ordering: out[a] = sum_x in[x] * (-1)^(a . x).  Self-inverse up to a
// factor of 2^n.  Length must be a power of two.
template <typename T>
void fwht_inplace(std::span<T> v) {
  const std::size_t n = v.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("fwht: length must be a power of two");
  }
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const T a = v[j];
        const T b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

template <typename T>
std::vector<T> fwht(std::vector<T> v) {
  fwht_inplace(std::span<T>(v));
  return v;
}

}  // namespace iqpbench
