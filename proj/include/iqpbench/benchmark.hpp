#pragma once

#include <string>
#include <vector>

#include "iqpbench/band.hpp"
#include "iqpbench/bits.hpp"
#include "iqpbench/prob.hpp"
#include "iqpbench/rng.hpp"

namespace iqpbench {

// One paired experimental unit is identified by (n, beta, seed) plus the
// protocol constants below.  Defaults are the reference configuration.
struct BenchmarkConfig {
  int n = 12;
  double beta = 0.9;
  u64 seed = 111;
  int m = 200;           // training-sample size
  double sigma = 1.0;    // band parameter
  int K = 512;           // band width
  double tau = 0.1;      // high-value quantile
};

struct Instance {
  BenchmarkConfig config;
  ProbabilityTable target;       // p*_beta
  std::vector<u32> train;        // multiset, size m, order as drawn
  ParityBand band;               // masks + empirical target moments
  std::vector<u32> support;      // S, ascending
  std::vector<u32> observed;     // O, distinct train states, ascending
  std::vector<u32> unobserved;   // U = S \ O
  std::vector<u32> high_value;   // H_tau
  std::vector<u32> unseen_elite; // E_tau = H_tau intersect U
  int score_threshold = 0;       // Q_{1-tau}

  ProbabilityTable empirical_table() const;
  u64 train_checksum() const { return hash_u32(train); }
  u64 band_checksum() const { return hash_u32(band.masks); }
  u64 target_checksum() const { return hash_doubles(target.mass); }
};

// All x in {0,1}^n with even popcount, ascending; |result| = 2^(n-1).
std::vector<u32> valid_support(int n);

// Longest run of zeros with a one immediately on both sides, scanning the
// string x1..xn non-cyclically; 0 when no bracketed zero run exists.
int score(u32 x, int n);

// Boltzmann family: mass proportional to exp(beta * score) on the
// even-parity support, exactly 0 elsewhere.
ProbabilityTable target_distribution(int n, double beta);

// m i.i.d. draws by inverse CDF over the dense table.
std::vector<u32> sample_training_set(const ProbabilityTable& target, int m,
                                     Rng& rng);

// Discrete upper quantile: smallest s such that |{x in S : score <= s}|
// >= (1 - tau) |S|.  H_tau includes ties at the threshold.
int score_quantile(const std::vector<u32>& support, int n, double tau);

// Derives the full paired instance deterministically from its config.
Instance make_instance(const BenchmarkConfig& config);

// JSON record with config, train multiset as value:count pairs, band masks
// and the target checksum; enough to replay the instance exactly.
std::string instance_to_json(const Instance& inst);

}  // namespace iqpbench
