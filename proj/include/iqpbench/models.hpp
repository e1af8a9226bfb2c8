#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "iqpbench/band.hpp"
#include "iqpbench/bits.hpp"
#include "iqpbench/prob.hpp"

namespace iqpbench {

using cplx = std::complex<double>;

// NN + NNN couplings on a ring: (i, i+1 mod n) then (i, i+2 mod n),
// 2n edges, one angle each.
std::vector<std::pair<int, int>> ring_edges(int n);
// All unordered pairs j < k.
std::vector<std::pair<int, int>> dense_pairs(int n);

// IQP Born machine: Hadamard layers around a diagonal block of ZZ phase
// couplings, q(x) = |<x| H^n D(theta) H^n |0^n>|^2.
struct IqpParams {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> theta;  // one angle per edge

  static IqpParams ring(int n);
};

// Intermediates reused between the forward evaluation and the gradient.
struct IqpEvaluation {
  ProbabilityTable table;
  std::vector<cplx> phase;  // exp(i E(z)) per computational state
  std::vector<cplx> psi;    // output amplitudes
};

IqpEvaluation iqp_evaluate(const IqpParams& params);
ProbabilityTable iqp_distribution(const IqpParams& params);

// Exact d(cot . mass)/d(theta) via the chain rule through the two Hadamard
// transforms; cotangent is dLoss/dmass over all 2^n states.
std::vector<double> iqp_gradient(const IqpParams& params,
                                 const IqpEvaluation& eval,
                                 const std::vector<double>& cotangent);

// Pairwise Gibbs model over spins s_j = (-1)^{x_j}:
// mass(x) ~ exp(sum_J J_jk s_j s_k + sum_j h_j s_j), exact normalization.
struct IsingParams {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> couplings;  // per pair
  std::vector<double> fields;     // per site

  // cyclic NN+NNN graph, 3n parameters
  static IsingParams sparse(int n);
  // all pair products plus fields, n(n-1)/2 + n parameters
  static IsingParams dense(int n);

  std::vector<double> flat() const;
  void set_flat(const std::vector<double>& w);
};

ProbabilityTable ising_distribution(const IsingParams& params);

// Gradient of cot . mass via the Gibbs covariance identity
// dmass/dw = mass * (f_w - E[f_w]); order matches IsingParams::flat().
std::vector<double> ising_gradient(const IsingParams& params,
                                   const ProbabilityTable& table,
                                   const std::vector<double>& cotangent);

// Maximum-entropy model on the band's parity features,
// mass(x) ~ exp(sum_k theta_k phi_{alpha_k}(x)) over the full cube.
struct MaxEntParams {
  std::vector<double> theta;  // aligned with band.masks
};

ProbabilityTable maxent_distribution(const MaxEntParams& params,
                                     const ParityBand& band, int n);

// Convex dual F(theta) = log sum_x exp(theta . P_{.,x}) - theta . zhat and
// its gradient (model moments minus targets).
std::pair<double, std::vector<double>> maxent_objective_and_gradient(
    const MaxEntParams& params, const ParityBand& band, int n);

// Structured record of trained parameters (model class, n, edge list where
// applicable, parameter vector).
std::string params_to_json(const std::string& model_class, int n,
                           const std::vector<std::pair<int, int>>& edges,
                           const std::vector<double>& values);

}  // namespace iqpbench
