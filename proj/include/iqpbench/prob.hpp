#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "iqpbench/bits.hpp"

namespace iqpbench {

// Dense probability table over all 2^n bitstrings; the universal exchange
// format between models, metrics and diagnostics.  Entries are >= 0 and
// sum to 1 within 1e-12.
struct ProbabilityTable {
  int n = 0;
  std::vector<double> mass;

  std::size_t size() const { return mass.size(); }
};

// Dense vector of the 2^n parity moments of a table, indexed by mask.
// coeff[0] equals the table's total mass.
struct WalshSpectrum {
  int n = 0;
  std::vector<double> coeff;
};

// Throws std::invalid_argument if the table violates its invariants.
void validate(const ProbabilityTable& table, double tol = 1e-12);

ProbabilityTable uniform_table(int n);
// Uniform over a given state subset, zero elsewhere.
ProbabilityTable uniform_on(int n, const std::vector<u32>& states);
ProbabilityTable point_mass(int n, u32 x);

WalshSpectrum spectrum_of(const ProbabilityTable& table);

// Inverse reconstruction r(x) = 2^-n sum_a coeff[a] (-1)^(a.x).  The result
// of a partial or perturbed spectrum may carry signed entries, so a plain
// vector is returned.
std::vector<double> table_from_spectrum(const WalshSpectrum& spec);

// FNV-1a over the raw bytes of a double vector; used for content checksums
// of tables and training sets.
u64 hash_doubles(const std::vector<double>& v);
u64 hash_u32(const std::vector<u32>& v);
std::string hex64(u64 v);

}  // namespace iqpbench
