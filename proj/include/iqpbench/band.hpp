#pragma once

#include <vector>

#include "iqpbench/bits.hpp"
#include "iqpbench/rng.hpp"

namespace iqpbench {

// A sampled band of K nonzero Walsh masks together with the empirical
// target moments computed from the training sample.  Duplicate masks are
// retained; they weight the loss with their multiplicity.
struct ParityBand {
  double sigma = 1.0;
  std::vector<u32> masks;
  std::vector<double> target_moments;

  int K() const { return static_cast<int>(masks.size()); }
};

// p_sigma = (1 - exp(-1/(2 sigma^2))) / 2, the per-bit rate of the
// product-Bernoulli mask distribution.  Smaller sigma gives heavier masks.
double bernoulli_rate(double sigma);

// K i.i.d. masks with Bernoulli(p_sigma) bits; all-zero draws are rejected
// and the whole mask redrawn.  Deterministic given the rng state.
std::vector<u32> sample_band(double sigma, int K, int n, Rng& rng);

// Mean of the Walsh characters over the sample (with multiplicity), one
// entry per mask.
std::vector<double> empirical_moments(const std::vector<u32>& masks,
                                      const std::vector<u32>& sample);

}  // namespace iqpbench
