#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "driftbench/chunk.hpp"
#include "driftbench/rng.hpp"

namespace driftbench {

enum class DriftDynamics { sudden, gradual };

std::string to_string(DriftDynamics d);
DriftDynamics dynamics_from_string(const std::string& s);

/// Sigmoid steepness presets for the two dynamics regimes.
constexpr double kSuddenSlope = 999.0;
constexpr double kGradualSlope = 5.0;

struct StreamSpec {
  std::size_t n_chunks = 250;
  std::size_t chunk_size = 200;
  std::size_t n_features = 30;
  double informative_fraction = 0.30;
  std::size_t n_drifts = 10;
  DriftDynamics dynamics = DriftDynamics::sudden;
  double slope = kSuddenSlope;
  std::uint64_t seed = 0;

  std::size_t n_informative() const;
  void validate() const;  // throws std::invalid_argument on violation

  static StreamSpec make(DriftDynamics dyn, std::size_t drifts,
                         std::size_t features, std::uint64_t seed);
};

/// Ground-truth central drift moments of a generated stream.
struct DriftSchedule {
  std::vector<std::size_t> centers;  // strictly increasing chunk indices
  DriftDynamics dynamics = DriftDynamics::sudden;
  double slope = kSuddenSlope;
};

/// Per-concept, per-class mean vectors over the informative subspace.
/// concepts = n_drifts + 1; means[concept][cls] has n_informative entries.
struct ConceptSet {
  std::vector<std::array<std::vector<double>, 2>> means;
};

/// Evenly spaced drift centers: centers[i] = round((2i+1) * n_chunks / (2 * n_drifts)).
DriftSchedule build_schedule(const StreamSpec& spec);

/// Probability that a sample in chunk k of transition i comes from the new
/// concept: logistic(slope * (k - t_i) / W), W = n_chunks / (2 * n_drifts).
double concept_mix_probability(std::size_t k, std::size_t i,
                               const StreamSpec& spec,
                               const DriftSchedule& schedule);

ConceptSet draw_concepts(const StreamSpec& spec, Rng& rng);

Chunk generate_chunk(const StreamSpec& spec, const ConceptSet& concepts,
                     const DriftSchedule& schedule, std::size_t k, Rng& rng);

/// A fully materialized stream: chunk sequence plus ground truth.
struct Stream {
  std::vector<Chunk> chunks;
  DriftSchedule schedule;
};

/// Deterministic given spec.seed; the concept set is drawn once up front.
Stream generate_stream(const StreamSpec& spec);

}  // namespace driftbench
