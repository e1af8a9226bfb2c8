#include "iqpbench/models.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "iqpbench/fwht.hpp"

namespace iqpbench {

std::vector<std::pair<int, int>> ring_edges(int n) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 2) % n);
  return edges;
}

std::vector<std::pair<int, int>> dense_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) pairs.emplace_back(j, k);
  }
  return pairs;
}

namespace {

u32 pair_mask(const std::pair<int, int>& e) {
  return (u32{1} << e.first) | (u32{1} << e.second);
}

// Walsh polynomial evaluation: energy(x) = sum_k w_k phi_{m_k}(x) for all x,
// via one transform of the sparse coefficient vector.
std::vector<double> walsh_polynomial(int n, const std::vector<u32>& masks,
                                     const std::vector<double>& weights) {
  std::vector<double> coeff(std::size_t{1} << n, 0.0);
  for (std::size_t k = 0; k < masks.size(); ++k) coeff[masks[k]] += weights[k];
  fwht_inplace(std::span<double>(coeff));
  return coeff;
}

// exp-normalize with max subtraction; returns the table
ProbabilityTable gibbs_table(int n, const std::vector<double>& energy) {
  ProbabilityTable t{n, std::vector<double>(energy.size())};
  const double emax = *std::max_element(energy.begin(), energy.end());
  double sum = 0.0;
  for (std::size_t x = 0; x < energy.size(); ++x) {
    const double w = std::exp(energy[x] - emax);
    t.mass[x] = w;
    sum += w;
  }
  for (double& m : t.mass) m /= sum;
  return t;
}

}  // namespace

IqpParams IqpParams::ring(int n) {
  IqpParams p;
  p.n = n;
  p.edges = ring_edges(n);
  p.theta.assign(p.edges.size(), 0.0);
  return p;
}

IqpEvaluation iqp_evaluate(const IqpParams& params) {
  if (params.theta.size() != params.edges.size()) {
    throw std::invalid_argument("iqp_evaluate: one angle per edge required");
  }
  const int n = params.n;
  const std::size_t size = std::size_t{1} << n;

  std::vector<u32> masks(params.edges.size());
  for (std::size_t e = 0; e < params.edges.size(); ++e) {
    masks[e] = pair_mask(params.edges[e]);
  }
  const std::vector<double> energy = walsh_polynomial(n, masks, params.theta);

  IqpEvaluation eval;
  eval.phase.resize(size);
  for (std::size_t z = 0; z < size; ++z) {
    eval.phase[z] = {std::cos(energy[z]), std::sin(energy[z])};
  }
  eval.psi = eval.phase;
  fwht_inplace(std::span<cplx>(eval.psi));
  const double scale = 1.0 / static_cast<double>(size);
  eval.table.n = n;
  eval.table.mass.resize(size);
  for (std::size_t x = 0; x < size; ++x) {
    eval.psi[x] *= scale;
    eval.table.mass[x] = std::norm(eval.psi[x]);
  }
  return eval;
}

ProbabilityTable iqp_distribution(const IqpParams& params) {
  return iqp_evaluate(params).table;
}

std::vector<double> iqp_gradient(const IqpParams& params,
                                 const IqpEvaluation& eval,
                                 const std::vector<double>& cotangent) {
  const std::size_t size = eval.table.mass.size();
  if (cotangent.size() != size) {
    throw std::invalid_argument("iqp_gradient: cotangent length != 2^n");
  }
  // grad_e = sum_x cot[x] * 2 Re(conj(psi[x]) dpsi[x]/dtheta_e) with
  // dpsi/dtheta_e = 2^-n F (i chi_e phase); rearranged so one transform of
  // cot*conj(psi) and one of Im(phase * g) serve every edge at once.
  std::vector<cplx> a(size);
  for (std::size_t x = 0; x < size; ++x) {
    a[x] = cotangent[x] * std::conj(eval.psi[x]);
  }
  fwht_inplace(std::span<cplx>(a));
  const double scale = 1.0 / static_cast<double>(size);
  std::vector<double> w(size);
  for (std::size_t z = 0; z < size; ++z) {
    w[z] = std::imag(eval.phase[z] * a[z]) * scale;
  }
  fwht_inplace(std::span<double>(w));
  std::vector<double> grad(params.edges.size());
  for (std::size_t e = 0; e < params.edges.size(); ++e) {
    grad[e] = -2.0 * w[pair_mask(params.edges[e])];
  }
  return grad;
}

IsingParams IsingParams::sparse(int n) {
  IsingParams p;
  p.n = n;
  p.pairs = ring_edges(n);
  p.couplings.assign(p.pairs.size(), 0.0);
  p.fields.assign(static_cast<std::size_t>(n), 0.0);
  return p;
}

IsingParams IsingParams::dense(int n) {
  IsingParams p;
  p.n = n;
  p.pairs = dense_pairs(n);
  p.couplings.assign(p.pairs.size(), 0.0);
  p.fields.assign(static_cast<std::size_t>(n), 0.0);
  return p;
}

std::vector<double> IsingParams::flat() const {
  std::vector<double> w = couplings;
  w.insert(w.end(), fields.begin(), fields.end());
  return w;
}

void IsingParams::set_flat(const std::vector<double>& w) {
  if (w.size() != couplings.size() + fields.size()) {
    throw std::invalid_argument("IsingParams::set_flat: bad length");
  }
  std::copy(w.begin(), w.begin() + couplings.size(), couplings.begin());
  std::copy(w.begin() + couplings.size(), w.end(), fields.begin());
}

namespace {

std::vector<u32> ising_feature_masks(const IsingParams& params) {
  std::vector<u32> masks;
  masks.reserve(params.pairs.size() + params.fields.size());
  for (const auto& p : params.pairs) masks.push_back(pair_mask(p));
  for (int j = 0; j < params.n; ++j) masks.push_back(u32{1} << j);
  return masks;
}

}  // namespace

ProbabilityTable ising_distribution(const IsingParams& params) {
  const std::vector<double> energy =
      walsh_polynomial(params.n, ising_feature_masks(params), params.flat());
  return gibbs_table(params.n, energy);
}

std::vector<double> ising_gradient(const IsingParams& params,
                                   const ProbabilityTable& table,
                                   const std::vector<double>& cotangent) {
  const std::size_t size = table.mass.size();
  if (cotangent.size() != size) {
    throw std::invalid_argument("ising_gradient: cotangent length != 2^n");
  }
  // grad_f = sum_x cot q (f - E[f]) = T[m_f] - T[0] M[m_f] with
  // T = F(cot*q) and M = F(q).
  std::vector<double> t(size);
  for (std::size_t x = 0; x < size; ++x) t[x] = cotangent[x] * table.mass[x];
  fwht_inplace(std::span<double>(t));
  std::vector<double> moments = fwht(table.mass);

  const std::vector<u32> masks = ising_feature_masks(params);
  std::vector<double> grad(masks.size());
  for (std::size_t f = 0; f < masks.size(); ++f) {
    grad[f] = t[masks[f]] - t[0] * moments[masks[f]];
  }
  return grad;
}

ProbabilityTable maxent_distribution(const MaxEntParams& params,
                                     const ParityBand& band, int n) {
  if (params.theta.size() != band.masks.size()) {
    throw std::invalid_argument("maxent_distribution: theta length != K");
  }
  const std::vector<double> energy =
      walsh_polynomial(n, band.masks, params.theta);
  return gibbs_table(n, energy);
}

std::pair<double, std::vector<double>> maxent_objective_and_gradient(
    const MaxEntParams& params, const ParityBand& band, int n) {
  if (params.theta.size() != band.masks.size()) {
    throw std::invalid_argument("maxent_objective: theta length != K");
  }
  const std::vector<double> energy =
      walsh_polynomial(n, band.masks, params.theta);
  const double emax = *std::max_element(energy.begin(), energy.end());
  double sum = 0.0;
  for (double e : energy) sum += std::exp(e - emax);
  const double log_z = std::log(sum) + emax;

  ProbabilityTable q = gibbs_table(n, energy);
  std::vector<double> moments = fwht(q.mass);

  double objective = log_z;
  std::vector<double> grad(params.theta.size());
  for (std::size_t k = 0; k < params.theta.size(); ++k) {
    objective -= params.theta[k] * band.target_moments[k];
    grad[k] = moments[band.masks[k]] - band.target_moments[k];
  }
  return {objective, std::move(grad)};
}

std::string params_to_json(const std::string& model_class, int n,
                           const std::vector<std::pair<int, int>>& edges,
                           const std::vector<double>& values) {
  nlohmann::json j;
  j["model"] = model_class;
  j["n"] = n;
  if (!edges.empty()) {
    nlohmann::json e = nlohmann::json::array();
    for (const auto& [a, b] : edges) e.push_back({a, b});
    j["edges"] = std::move(e);
  }
  j["values"] = values;
  return j.dump();
}

}  // namespace iqpbench
