#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "iqpbench/bits.hpp"

namespace iqpbench {

// splitmix64 finalizer; used to combine seed material into stream seeds.
inline u64 mix64(u64 z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline u64 mix64(u64 a, u64 b) { return mix64(a ^ mix64(b)); }

inline u64 double_bits(double x) {
  u64 out;
  static_assert(sizeof(out) == sizeof(x));
  __builtin_memcpy(&out, &x, sizeof(out));
  return out;
}

// Deterministic random stream. mt19937_64 is fully specified by the
// standard, and all derived variates below use explicit bit-level
// constructions rather than std::*_distribution, so sequences are
// reproducible across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed) {}

  u64 next_u64() { return eng_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // standard normal via Box-Muller; draws are consumed in pairs
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Stream tags for per-instance substreams. Adding a consumer never
// perturbs existing streams.
enum class StreamTag : u64 {
  train_sampling = 1,
  band_sampling = 2,
  iqp_init = 3,
  ising_init = 4,
  maxent_init = 5,
};

// Instance-level master seed: a function of the data identity only
// (n, beta, seed, m), so band and model choices never reshuffle the
// training sample.
inline u64 instance_master_seed(int n, double beta, u64 seed, int m) {
  u64 z = mix64(seed, static_cast<u64>(n));
  z = mix64(z, double_bits(beta));
  z = mix64(z, static_cast<u64>(m));
  return z;
}

inline u64 stream_seed(u64 master, StreamTag tag) {
  return mix64(master, static_cast<u64>(tag));
}

// The band stream additionally depends on (sigma, K) so each band
// configuration is an independent draw while the training data is shared.
inline u64 band_stream_seed(u64 master, double sigma, int K) {
  u64 z = stream_seed(master, StreamTag::band_sampling);
  z = mix64(z, double_bits(sigma));
  z = mix64(z, static_cast<u64>(K));
  return z;
}

}  // namespace iqpbench
