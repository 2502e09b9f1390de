#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace driftbench {

/// Deterministic 64-bit generator (SplitMix64). Counter/permutation design:
/// the state advances by a fixed odd increment and each output is a bijective
/// mix of the state, so the sequence depends only on the seed and is identical
/// on every platform.
class Rng {
public:
  static constexpr std::string_view algorithm_id = "splitmix64";

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Derive an independent sub-stream for (domain_tag, index). The tag is
  /// FNV-1a hashed and both components pass through the SplitMix64 finalizer,
  /// so distinct (tag, index) pairs land in distinct streams.
  static Rng derive(std::uint64_t base_seed, std::string_view domain_tag,
                    std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV offset basis
    for (char c : domain_tag) {
      h ^= static_cast<std::uint8_t>(c);
      h *= 0x100000001b3ULL;
    }
    std::uint64_t s = mix(base_seed);
    s = mix(s ^ h);
    s = mix(s ^ index);
    return Rng(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by scaling; bound must be positive and
  /// far below 2^53 (always true here: bounds are sample counts).
  std::size_t next_index(std::size_t bound) {
    if (bound == 0) throw std::invalid_argument("next_index: zero bound");
    auto i = static_cast<std::size_t>(next_double() * static_cast<double>(bound));
    return i < bound ? i : bound - 1;
  }

  /// One N(0,1) draw via Box-Muller. Both outputs of each transform are
  /// consumed in order; u1 is shifted into (0,1] so log() stays finite.
  double next_standard_normal();

  /// n draws from N(mean, std^2). std must be nonnegative.
  std::vector<double> normal(double mean, double std, std::size_t n);

  /// s elements drawn independently and uniformly (with replacement).
  std::vector<double> sample_with_replacement(const std::vector<double>& values,
                                              std::size_t s);
  /// Same, drawing indices into a pool of the given size.
  std::vector<std::size_t> sample_indices(std::size_t pool, std::size_t s);

  /// s distinct indices into [0, pool) via Floyd's algorithm (O(s) draws).
  /// A two-sample test fed these subsamples keeps its nominal significance
  /// level; duplicated rows would understate the subsample-mean variance.
  /// Falls back to drawing with replacement when pool < s.
  std::vector<std::size_t> sample_distinct_indices(std::size_t pool,
                                                   std::size_t s);

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace driftbench
