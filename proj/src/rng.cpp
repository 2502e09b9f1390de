#include "driftbench/rng.hpp"

#include <cmath>
#include <unordered_set>

namespace driftbench {

double Rng::next_standard_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0,1]
  double u2 = next_double();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * M_PI * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::vector<double> Rng::normal(double mean, double std, std::size_t n) {
  if (std < 0.0) throw std::invalid_argument("normal: negative std");
  std::vector<double> out(n);
  for (auto& v : out) v = mean + std * next_standard_normal();
  return out;
}

std::vector<double> Rng::sample_with_replacement(
    const std::vector<double>& values, std::size_t s) {
  if (values.empty())
    throw std::invalid_argument("sample_with_replacement: empty pool");
  std::vector<double> out(s);
  for (auto& v : out) v = values[next_index(values.size())];
  return out;
}

std::vector<std::size_t> Rng::sample_indices(std::size_t pool, std::size_t s) {
  if (pool == 0) throw std::invalid_argument("sample_indices: empty pool");
  std::vector<std::size_t> out(s);
  for (auto& v : out) v = next_index(pool);
  return out;
}

std::vector<std::size_t> Rng::sample_distinct_indices(std::size_t pool,
                                                      std::size_t s) {
  if (pool == 0)
    throw std::invalid_argument("sample_distinct_indices: empty pool");
  if (pool < s) return sample_indices(pool, s);
  std::vector<std::size_t> out;
  out.reserve(s);
  std::unordered_set<std::size_t> seen;
  seen.reserve(s * 2);
  for (std::size_t j = pool - s; j < pool; ++j) {
    std::size_t candidate = next_index(j + 1);
    if (!seen.insert(candidate).second) {
      candidate = j;
      seen.insert(candidate);
    }
    out.push_back(candidate);
  }
  return out;
}

}  // namespace driftbench
