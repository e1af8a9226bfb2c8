#include "iqpbench/spectral.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>

#include "iqpbench/fwht.hpp"

namespace iqpbench {

std::vector<double> linear_reconstruction(const ParityBand& band, int n) {
  std::vector<double> coeff(std::size_t{1} << n, 0.0);
  coeff[0] = 1.0;
  for (std::size_t k = 0; k < band.masks.size(); ++k) {
    coeff[band.masks[k]] += band.target_moments[k];
  }
  fwht_inplace(std::span<double>(coeff));
  const double scale = 1.0 / static_cast<double>(coeff.size());
  for (double& v : coeff) v *= scale;
  return coeff;
}

SpectralProxy spectral_projection(std::vector<double> linear, int n) {
  SpectralProxy proxy;
  proxy.n = n;
  proxy.projected.n = n;
  proxy.projected.mass.resize(linear.size());
  double positive = 0.0;
  double clipped = 0.0;
  for (std::size_t x = 0; x < linear.size(); ++x) {
    if (linear[x] > 0.0) {
      proxy.projected.mass[x] = linear[x];
      positive += linear[x];
    } else {
      proxy.projected.mass[x] = 0.0;
      clipped -= linear[x];
    }
  }
  if (positive <= 0.0) {
    throw std::runtime_error(
        "spectral_projection: no positive entry to renormalize");
  }
  for (double& m : proxy.projected.mass) m /= positive;
  proxy.negative_mass_clipped = clipped;
  proxy.linear = std::move(linear);
  return proxy;
}

SpectralProxy spectral_proxy(const ParityBand& band, int n) {
  return spectral_projection(linear_reconstruction(band, n), n);
}

RegionVisibility region_visibility(const ParityBand& band,
                                   const std::vector<u32>& region, int n) {
  RegionVisibility out;
  if (region.empty()) return out;
  const double size = static_cast<double>(std::size_t{1} << n);
  out.uniform_mass = static_cast<double>(region.size()) / size;

  // phibar_A(alpha) for all alpha at once: one transform of the indicator.
  std::vector<double> indicator(std::size_t{1} << n, 0.0);
  for (u32 x : region) indicator[x] = 1.0;
  fwht_inplace(std::span<double>(indicator));
  double vis = 0.0;
  for (std::size_t k = 0; k < band.masks.size(); ++k) {
    vis += band.target_moments[k] * indicator[band.masks[k]] / size;
  }
  out.visibility = vis;
  return out;
}

}  // namespace iqpbench
