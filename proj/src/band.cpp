#include "iqpbench/band.hpp"

#include <cmath>
#include <stdexcept>

namespace iqpbench {

double bernoulli_rate(double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("bernoulli_rate: sigma must be positive");
  }
  return 0.5 * (1.0 - std::exp(-1.0 / (2.0 * sigma * sigma)));
}

std::vector<u32> sample_band(double sigma, int K, int n, Rng& rng) {
  if (K < 1) throw std::invalid_argument("sample_band: K must be >= 1");
  if (n < 1 || n > max_bits) throw std::invalid_argument("sample_band: bad n");
  const double p = bernoulli_rate(sigma);
  std::vector<u32> masks;
  masks.reserve(static_cast<std::size_t>(K));
  while (static_cast<int>(masks.size()) < K) {
    u32 m = 0;
    for (int j = 0; j < n; ++j) {
      if (rng.bernoulli(p)) m |= (u32{1} << j);
    }
    if (m != 0) masks.push_back(m);
  }
  return masks;
}

std::vector<double> empirical_moments(const std::vector<u32>& masks,
                                      const std::vector<u32>& sample) {
  if (sample.empty()) {
    throw std::invalid_argument("empirical_moments: empty sample");
  }
  std::vector<double> out(masks.size(), 0.0);
  for (std::size_t k = 0; k < masks.size(); ++k) {
    long acc = 0;
    for (u32 x : sample) acc += walsh_character(masks[k], x);
    out[k] = static_cast<double>(acc) / static_cast<double>(sample.size());
  }
  return out;
}

}  // namespace iqpbench
