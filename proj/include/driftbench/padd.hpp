#pragma once

#include <cstdint>
#include <vector>

#include "driftbench/chunk.hpp"
#include "driftbench/projector.hpp"
#include "driftbench/rng.hpp"
#include "driftbench/stat_kernels.hpp"

namespace driftbench {

struct PaddParams {
  double alpha = 0.07;       // significance level of each t-test
  double theta = 0.19;       // fraction of significant tests that fires drift
  std::size_t n_outputs = 12;      // e
  std::size_t replications = 12;   // r
  std::size_t sample_size = 50;    // s

  void validate() const;

  static PaddParams sudden_preset() { return {0.07, 0.19, 12, 12, 50}; }
  static PaddParams gradual_preset() { return {0.13, 0.26, 12, 12, 50}; }
};

enum class Verdict { none, drift };

/// Detector state: frozen network, per-output activation history since the
/// last detection, and the subsampling RNG. Unsupervised by construction --
/// only feature matrices enter, labels are never read.
class PaddDetector {
public:
  PaddDetector(const PaddParams& params, std::size_t n_features,
               std::uint64_t seed);

  /// One step of the detection loop. Replicated t-tests compare subsamples
  /// of the history against the current activations per output; the chunk
  /// fires drift when more than theta * e * r tests reject. The first chunk
  /// never tests (empty history). Current activations are always appended
  /// to the history afterward.
  Verdict process_chunk(std::size_t chunk_index,
                        const Eigen::MatrixXd& features);
  Verdict process_chunk(const Chunk& chunk) {
    return process_chunk(chunk.index, chunk.features);
  }

  const std::vector<std::size_t>& detections() const { return detections_; }
  const RandomMLP& network() const { return net_; }
  std::size_t history_length() const {
    return history_.empty() ? 0 : history_[0].size();
  }
  std::size_t last_counter() const { return last_counter_; }

private:
  PaddParams params_;
  RandomMLP net_;
  std::vector<std::vector<double>> history_;  // one buffer per output
  Rng rng_;
  std::vector<std::size_t> detections_;
  std::size_t last_counter_ = 0;
};

/// Whole-stream convenience wrapper; returns detection chunk indices in order.
std::vector<std::size_t> padd_run(const PaddParams& params,
                                  const std::vector<Chunk>& stream,
                                  std::uint64_t seed);

}  // namespace driftbench
