#include "driftbench/stream_gen.hpp"

#include <cmath>
#include <stdexcept>

namespace driftbench {

std::string to_string(DriftDynamics d) {
  return d == DriftDynamics::sudden ? "sudden" : "gradual";
}

DriftDynamics dynamics_from_string(const std::string& s) {
  if (s == "sudden") return DriftDynamics::sudden;
  if (s == "gradual") return DriftDynamics::gradual;
  throw std::invalid_argument("unknown drift dynamics: " + s);
}

std::size_t StreamSpec::n_informative() const {
  return static_cast<std::size_t>(
      std::ceil(informative_fraction * static_cast<double>(n_features)));
}

void StreamSpec::validate() const {
  if (n_chunks < 1) throw std::invalid_argument("n_chunks must be >= 1");
  if (chunk_size < 1) throw std::invalid_argument("chunk_size must be >= 1");
  if (n_features < 1) throw std::invalid_argument("n_features must be >= 1");
  if (informative_fraction <= 0.0 || informative_fraction > 1.0)
    throw std::invalid_argument("informative_fraction must be in (0, 1]");
  if (n_informative() < 1)
    throw std::invalid_argument("need at least one informative feature");
}

StreamSpec StreamSpec::make(DriftDynamics dyn, std::size_t drifts,
                            std::size_t features, std::uint64_t seed) {
  StreamSpec spec;
  spec.dynamics = dyn;
  spec.slope = (dyn == DriftDynamics::sudden) ? kSuddenSlope : kGradualSlope;
  spec.n_drifts = drifts;
  spec.n_features = features;
  spec.seed = seed;
  return spec;
}

DriftSchedule build_schedule(const StreamSpec& spec) {
  spec.validate();
  DriftSchedule sched;
  sched.dynamics = spec.dynamics;
  sched.slope = spec.slope;
  sched.centers.reserve(spec.n_drifts);
  for (std::size_t i = 0; i < spec.n_drifts; ++i) {
    // Floor, not round-half-up: a 250-chunk stream with 10 drifts has its
    // first centers at chunks 12 and 37.
    double c = (2.0 * static_cast<double>(i) + 1.0) *
               static_cast<double>(spec.n_chunks) /
               (2.0 * static_cast<double>(spec.n_drifts));
    sched.centers.push_back(static_cast<std::size_t>(c));
  }
  return sched;
}

double concept_mix_probability(std::size_t k, std::size_t i,
                               const StreamSpec& spec,
                               const DriftSchedule& schedule) {
  double half_period = static_cast<double>(spec.n_chunks) /
                       (2.0 * static_cast<double>(spec.n_drifts));
  double x = spec.slope *
             (static_cast<double>(k) -
              static_cast<double>(schedule.centers.at(i))) /
             half_period;
  return 1.0 / (1.0 + std::exp(-x));
}

ConceptSet draw_concepts(const StreamSpec& spec, Rng& rng) {
  ConceptSet set;
  std::size_t dims = spec.n_informative();
  set.means.resize(spec.n_drifts + 1);
  for (auto& concept_means : set.means) {
    for (auto& class_mean : concept_means) {
      class_mean.resize(dims);
      for (auto& m : class_mean) m = -2.0 + 4.0 * rng.next_double();
    }
  }
  // No two consecutive concepts may coincide; with continuous uniform draws a
  // collision has probability zero, but redraw to keep the invariant hard.
  for (std::size_t j = 1; j < set.means.size(); ++j) {
    while (set.means[j] == set.means[j - 1]) {
      for (auto& class_mean : set.means[j])
        for (auto& m : class_mean) m = -2.0 + 4.0 * rng.next_double();
    }
  }
  return set;
}

namespace {

// Transition whose center is nearest to chunk k (ties to the earlier one).
std::size_t nearest_transition(std::size_t k, const DriftSchedule& sched) {
  std::size_t best = 0;
  std::size_t best_dist = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < sched.centers.size(); ++i) {
    std::size_t c = sched.centers[i];
    std::size_t dist = k > c ? k - c : c - k;
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return best;
}

}  // namespace

Chunk generate_chunk(const StreamSpec& spec, const ConceptSet& concepts,
                     const DriftSchedule& schedule, std::size_t k, Rng& rng) {
  if (k >= spec.n_chunks) throw std::invalid_argument("chunk index out of range");
  std::size_t n = spec.chunk_size;
  std::size_t dims = spec.n_features;
  std::size_t informative = spec.n_informative();

  Chunk chunk;
  chunk.index = k;
  chunk.features.resize(static_cast<Eigen::Index>(n),
                        static_cast<Eigen::Index>(dims));
  chunk.labels.resize(n);

  for (std::size_t row = 0; row < n; ++row) {
    std::uint8_t label = rng.next_double() < 0.5 ? 0 : 1;
    chunk.labels[row] = label;

    std::size_t concept_idx = 0;
    if (spec.n_drifts > 0) {
      std::size_t t = nearest_transition(k, schedule);
      double p_new = concept_mix_probability(k, t, spec, schedule);
      concept_idx = rng.next_double() < p_new ? t + 1 : t;
    }
    const auto& mean = concepts.means.at(concept_idx)[label];

    for (std::size_t col = 0; col < dims; ++col) {
      double v = rng.next_standard_normal();
      if (col < informative) v += mean[col];
      chunk.features(static_cast<Eigen::Index>(row),
                     static_cast<Eigen::Index>(col)) = v;
    }
  }
  return chunk;
}

Stream generate_stream(const StreamSpec& spec) {
  spec.validate();
  Stream stream;
  stream.schedule = build_schedule(spec);
  Rng rng = Rng::derive(spec.seed, "stream", 0);
  ConceptSet concepts = draw_concepts(spec, rng);
  stream.chunks.reserve(spec.n_chunks);
  for (std::size_t k = 0; k < spec.n_chunks; ++k)
    stream.chunks.push_back(generate_chunk(spec, concepts, stream.schedule, k, rng));
  return stream;
}

}  // namespace driftbench
