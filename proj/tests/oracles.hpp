// Independent test oracles.  Everything here recomputes quantities by a
// different route than the library (double loops, dense matrices, string
// scans, finite differences) and must stay free of the code paths it checks.
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "iqpbench/bits.hpp"
#include "iqpbench/models.hpp"
#include "iqpbench/prob.hpp"
#include "iqpbench/rng.hpp"

namespace oracle {

using iqpbench::u32;
using cplx = std::complex<double>;

// O(4^n) definition of the Walsh spectrum.
inline std::vector<double> spectrum_double_loop(const std::vector<double>& mass) {
  const std::size_t size = mass.size();
  std::vector<double> coeff(size, 0.0);
  for (std::size_t a = 0; a < size; ++a) {
    double acc = 0.0;
    for (std::size_t x = 0; x < size; ++x) {
      int bits = 0;
      for (std::size_t b = a & x; b; b >>= 1) bits += static_cast<int>(b & 1);
      acc += (bits % 2 == 0) ? mass[x] : -mass[x];
    }
    coeff[a] = acc;
  }
  return coeff;
}

// Non-cyclic longest bracketed zero run via an explicit string scan.
inline int score_string_scan(u32 x, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back(((x >> i) & 1u) ? '1' : '0');
  int best = 0;
  for (int i = 0; i < n; ++i) {
    if (s[i] != '1') continue;
    for (int j = i + 1; j < n; ++j) {
      if (s[j] != '1') continue;
      bool all_zero = true;
      for (int k = i + 1; k < j; ++k) {
        if (s[k] != '0') all_zero = false;
      }
      if (all_zero && j - i - 1 > best) best = j - i - 1;
    }
  }
  return best;
}

// Dense statevector simulation of H^n D(theta) H^n |0..0> at tiny n.
inline std::vector<double> iqp_dense_matrix(const iqpbench::IqpParams& p) {
  const std::size_t size = std::size_t{1} << p.n;
  const double h = 1.0 / std::sqrt(static_cast<double>(size));
  // |+>^n
  std::vector<cplx> state(size, cplx{h, 0.0});
  // diagonal phases from explicit spin products
  for (std::size_t z = 0; z < size; ++z) {
    double energy = 0.0;
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
      const double sj = ((z >> p.edges[e].first) & 1u) ? -1.0 : 1.0;
      const double sk = ((z >> p.edges[e].second) & 1u) ? -1.0 : 1.0;
      energy += p.theta[e] * sj * sk;
    }
    state[z] *= cplx{std::cos(energy), std::sin(energy)};
  }
  // explicit dense H^n: psi[x] = h * sum_z (-1)^(x.z) state[z]
  std::vector<double> mass(size);
  for (std::size_t x = 0; x < size; ++x) {
    cplx acc{0.0, 0.0};
    for (std::size_t z = 0; z < size; ++z) {
      int bits = 0;
      for (std::size_t b = x & z; b; b >>= 1) bits += static_cast<int>(b & 1);
      acc += (bits % 2 == 0) ? state[z] : -state[z];
    }
    acc *= h;
    mass[x] = std::norm(acc);
  }
  return mass;
}

// Central finite differences of a scalar function of a parameter vector.
inline std::vector<double> finite_difference(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> params, double h = 1e-5) {
  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + h;
    const double up = f(params);
    params[i] = saved - h;
    const double down = f(params);
    params[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_rel_err(const std::vector<double>& got,
                          const std::vector<double>& want) {
  const double scale = std::max(max_abs(want), 1e-12);
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
  }
  return worst;
}

// Direct p log(p/q) accumulation, no clamping logic shared with the library.
inline double kl_direct(const std::vector<double>& p,
                        const std::vector<double>& q,
                        const std::vector<u32>& support) {
  double acc = 0.0;
  for (u32 x : support) {
    if (p[x] > 0.0) acc += p[x] * std::log(p[x] / q[x]);
  }
  return acc;
}

inline iqpbench::ProbabilityTable random_table(int n, iqpbench::Rng& rng) {
  iqpbench::ProbabilityTable t{n, std::vector<double>(std::size_t{1} << n)};
  double sum = 0.0;
  for (double& m : t.mass) {
    m = rng.uniform() + 1e-6;
    sum += m;
  }
  for (double& m : t.mass) m /= sum;
  return t;
}

}  // namespace oracle
