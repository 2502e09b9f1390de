#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "driftbench/chunk.hpp"
#include "driftbench/padd.hpp"

namespace driftbench {

/// Incremental Gaussian Naive Bayes for binary labels. Running per-class,
/// per-feature moments via Welford updates; variance smoothing adds
/// 1e-9 times the largest per-feature variance.
class GaussianNB {
public:
  explicit GaussianNB(std::size_t n_features);

  void partial_fit(const Eigen::MatrixXd& features,
                   const std::vector<std::uint8_t>& labels);
  std::vector<std::uint8_t> predict(const Eigen::MatrixXd& features) const;
  void reset();

  bool fitted() const { return counts_[0] + counts_[1] > 0; }
  double mean(std::size_t cls, std::size_t feature) const {
    return means_[cls][feature];
  }
  double variance(std::size_t cls, std::size_t feature) const;

private:
  std::size_t n_features_;
  std::array<std::size_t, 2> counts_{};
  std::array<std::vector<double>, 2> means_;
  std::array<std::vector<double>, 2> m2_;
};

enum class StepVerdict { none, warning, drift };

/// Drift Detection Method: monitors the running error rate, fires when
/// p_i + s_i exceeds p_min + threshold * s_min (threshold 3, warning at 2).
class Ddm {
public:
  explicit Ddm(double drift_threshold = 3.0, std::size_t min_samples = 30);
  StepVerdict update(bool error);
  void reset();

private:
  double drift_threshold_;
  std::size_t min_samples_;
  std::size_t count_ = 0;
  double p_ = 0.0;
  double p_min_ = 1e18, s_min_ = 1e18;
};

/// Early Drift Detection Method: monitors distances between consecutive
/// errors; fires when (p' + 2s') / (p'_max + 2s'_max) drops below beta.
class Eddm {
public:
  explicit Eddm(double beta = 0.9, std::size_t min_errors = 30);
  StepVerdict update(bool error);
  void reset();

private:
  double beta_;
  std::size_t min_errors_;
  std::size_t sample_index_ = 0;
  std::optional<std::size_t> last_error_index_;
  std::size_t n_errors_ = 0;
  double dist_mean_ = 0.0, dist_m2_ = 0.0;
  double max_level_ = 0.0;
};

/// Adaptive Windowing with an exponential histogram (bucket capacity M = 5).
/// The cut check runs on every insertion; on drift the oldest buckets up to
/// the failing cut are dropped.
class Adwin {
public:
  explicit Adwin(double delta = 0.002, std::size_t max_buckets_per_level = 5);
  StepVerdict update(double value);

  std::size_t width() const { return width_; }
  double mean() const { return width_ ? total_ / static_cast<double>(width_) : 0.0; }
  std::size_t bucket_count() const { return buckets_.size(); }

private:
  struct Bucket {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t width = 0;  // power of two
  };

  void insert(double value);
  void compress();
  bool detect_and_shrink();

  double delta_;
  std::size_t max_buckets_;
  std::deque<Bucket> buckets_;  // oldest first
  double total_ = 0.0;
  double var_sum_ = 0.0;  // sum of squares for window variance
  std::size_t width_ = 0;
};

/// Centroid Distance Drift Detector: compares consecutive chunk centroids,
/// fires when the distance exceeds (1 + sensitivity) times the running mean
/// of past distances (after a warm-up of 3 observed distances).
class Cddd {
public:
  explicit Cddd(double sensitivity, std::size_t warmup = 3);
  Verdict process_chunk(std::size_t chunk_index,
                        const Eigen::MatrixXd& features);
  Verdict process_chunk(const Chunk& chunk) {
    return process_chunk(chunk.index, chunk.features);
  }
  const std::vector<std::size_t>& detections() const { return detections_; }

private:
  double sensitivity_;
  std::size_t warmup_;
  std::optional<Eigen::VectorXd> prev_centroid_;
  std::size_t n_distances_ = 0;
  double dist_sum_ = 0.0;
  std::vector<std::size_t> detections_;
};

enum class SupervisedDetector { ddm, eddm, adwin };

/// Test-then-train protocol: chunk 0 fits only; later chunks predict with the
/// current model, feed per-sample error bits to the detector in order, then
/// fit. A firing at sample m is recorded at chunk floor(m / chunk_size). The
/// classifier is reset and refit on the current chunk after each drift.
std::vector<std::size_t> supervised_protocol(const std::vector<Chunk>& stream,
                                             SupervisedDetector detector,
                                             bool reset_on_drift = true);

}  // namespace driftbench
