#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "driftbench/metrics.hpp"
#include "driftbench/stream_gen.hpp"

namespace driftbench {

/// Detector roster understood by the benchmark runner.
const std::vector<std::string>& known_detectors();

struct ExperimentConfig {
  std::uint64_t base_seed = 0;
  std::vector<std::string> detectors;
  std::vector<DriftDynamics> dynamics = {DriftDynamics::sudden,
                                         DriftDynamics::gradual};
  std::vector<std::size_t> drift_counts = {3, 5, 10, 15};
  std::vector<std::size_t> feature_counts = {30, 60, 90};
  std::size_t replications = 10;
  std::size_t n_chunks = 250;
  std::size_t chunk_size = 200;
  std::string out_dir = "results";
  int jobs = 1;

  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);

struct SweepSpec {
  std::vector<double> alphas;  // strictly increasing
  std::vector<double> thetas;  // strictly increasing
  std::size_t n_drifts = 10;

  /// 15 alphas over [0.03, 0.2] and 10 thetas over [0.1, 0.3], evenly spaced.
  static SweepSpec defaults();
  static SweepSpec grid(std::size_t n_alphas, std::size_t n_thetas);
  void validate() const;
};

struct StreamConfigId {
  DriftDynamics dynamics;
  std::size_t n_drifts;
  std::size_t n_features;

  std::string name() const;  // e.g. "sudden_d10_f30"
  bool operator==(const StreamConfigId&) const = default;
};

struct DetectionRecord {
  std::string detector;
  std::string stream_id;
  std::size_t replication;
  std::size_t chunk;
};

struct MetricsRow {
  StreamConfigId stream;
  std::string detector;
  std::size_t replication;
  EvaluationResult result;
};

struct RankRow {
  std::string measure;  // d1 | d2 | r
  std::string method;
  double mean_rank;
};

struct BenchmarkResult {
  std::vector<DetectionRecord> detections;
  std::vector<MetricsRow> metrics;
  std::vector<RankRow> ranks;
  std::vector<std::string> excluded_methods;  // undefined cells, left unranked
  std::optional<double> critical_difference;  // absent if < 2 ranked methods
};

/// Stream seed for (config, replication); derived from the base seed so that
/// any execution order reproduces the same streams.
std::uint64_t stream_seed(std::uint64_t base_seed, const StreamConfigId& id,
                          std::size_t replication);
std::uint64_t detector_seed(std::uint64_t base_seed, const std::string& detector,
                            const StreamConfigId& id, std::size_t replication);

/// Run one detector on one materialized stream. Unsupervised detectors see
/// features only; supervised ones run the test-then-train protocol.
std::vector<std::size_t> run_detector(const std::string& name,
                                      const Stream& stream,
                                      const StreamConfigId& id,
                                      std::uint64_t seed);

/// The full Table-style grid: every (stream config, replication, detector).
/// Parallel over (stream, replication) tasks; output order is deterministic
/// and independent of the job count.
BenchmarkResult run_benchmark(const ExperimentConfig& config);

struct SweepResult {
  std::vector<double> alphas, thetas;
  // matrices[measure][alpha_index][theta_index]; absent = no detections.
  std::vector<std::vector<std::vector<std::optional<double>>>> matrices;
  std::vector<std::vector<std::vector<std::optional<double>>>> normalized;
  static constexpr const char* measure_names[3] = {"d1", "d2", "r"};
};

/// PADD alpha/theta sweep over the 10-drift stream family of the config grid.
SweepResult run_sweep(const SweepSpec& sweep, const ExperimentConfig& config);

/// Mean ranks, exclusions, and the critical difference, computed from
/// result.metrics (methods and stream configs in first-appearance order).
void compute_ranks(BenchmarkResult& result);

std::vector<MetricsRow> parse_metrics_csv(const std::string& text);
std::vector<DetectionRecord> parse_detections_csv(const std::string& text);

// CSV / JSON emission. All writers produce byte-stable output.
std::string detections_csv(const std::vector<DetectionRecord>& rows);
std::string metrics_csv(const std::vector<MetricsRow>& rows);
std::string ranks_csv(const BenchmarkResult& result);
std::string sweep_matrix_csv(const SweepResult& sweep, std::size_t measure,
                             bool normalized);
std::string schedule_json(const DriftSchedule& schedule);
DriftSchedule schedule_from_json(const std::string& text);
std::string stream_csv(const Stream& stream);

std::string format_double(double v);  // shortest round-trip representation

}  // namespace driftbench
