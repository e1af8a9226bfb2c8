#include "iqpbench/prob.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "iqpbench/fwht.hpp"

namespace iqpbench {

void validate(const ProbabilityTable& table, double tol) {
  if (table.n < 1 || table.n > max_bits) {
    throw std::invalid_argument("ProbabilityTable: n out of range");
  }
  if (table.mass.size() != (std::size_t{1} << table.n)) {
    throw std::invalid_argument("ProbabilityTable: mass length != 2^n");
  }
  double sum = 0.0;
  for (double m : table.mass) {
    if (!(m >= 0.0)) {
      throw std::invalid_argument("ProbabilityTable: negative entry");
    }
    sum += m;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("ProbabilityTable: mass does not sum to 1");
  }
}

ProbabilityTable uniform_table(int n) {
  const std::size_t size = std::size_t{1} << n;
  return {n, std::vector<double>(size, 1.0 / static_cast<double>(size))};
}

ProbabilityTable uniform_on(int n, const std::vector<u32>& states) {
  if (states.empty()) {
    throw std::invalid_argument("uniform_on: empty state set");
  }
  ProbabilityTable t{n, std::vector<double>(std::size_t{1} << n, 0.0)};
  const double p = 1.0 / static_cast<double>(states.size());
  for (u32 x : states) t.mass[x] = p;
  return t;
}

ProbabilityTable point_mass(int n, u32 x) {
  ProbabilityTable t{n, std::vector<double>(std::size_t{1} << n, 0.0)};
  t.mass[x] = 1.0;
  return t;
}

WalshSpectrum spectrum_of(const ProbabilityTable& table) {
  return {table.n, fwht(table.mass)};
}

std::vector<double> table_from_spectrum(const WalshSpectrum& spec) {
  std::vector<double> out = fwht(spec.coeff);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (double& v : out) v *= scale;
  return out;
}

namespace {
constexpr u64 fnv_offset = 0xcbf29ce484222325ULL;
constexpr u64 fnv_prime = 0x100000001b3ULL;

u64 fnv1a(const unsigned char* data, std::size_t len, u64 h = fnv_offset) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= fnv_prime;
  }
  return h;
}
}  // namespace

u64 hash_doubles(const std::vector<double>& v) {
  return fnv1a(reinterpret_cast<const unsigned char*>(v.data()),
               v.size() * sizeof(double));
}

u64 hash_u32(const std::vector<u32>& v) {
  return fnv1a(reinterpret_cast<const unsigned char*>(v.data()),
               v.size() * sizeof(u32));
}

std::string hex64(u64 v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace iqpbench
