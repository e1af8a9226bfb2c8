#pragma once

#include <vector>

#include "iqpbench/band.hpp"
#include "iqpbench/prob.hpp"

namespace iqpbench {

// Parameter-free band-limited reconstruction and its projection to a valid
// probability table.
struct SpectralProxy {
  int n = 0;
  std::vector<double> linear;        // q_lin, may carry signed entries
  ProbabilityTable projected;        // q_spec
  double negative_mass_clipped = 0;  // total magnitude removed by clipping
};

// q_lin(x) = 2^-n (1 + sum_k zhat_k phi_{alpha_k}(x)); duplicate masks sum.
std::vector<double> linear_reconstruction(const ParityBand& band, int n);

// Clip at zero and renormalize; throws when no positive entry exists.
SpectralProxy spectral_projection(std::vector<double> linear, int n);

SpectralProxy spectral_proxy(const ParityBand& band, int n);

// Mass the reconstruction assigns to a region, split into the uniform
// baseline |A|/2^n and the band-induced visibility term.
struct RegionVisibility {
  double uniform_mass = 0.0;
  double visibility = 0.0;
};

RegionVisibility region_visibility(const ParityBand& band,
                                   const std::vector<u32>& region, int n);

}  // namespace iqpbench
