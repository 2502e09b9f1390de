#pragma once

#include <optional>
#include <string>
#include <vector>

namespace driftbench {

/// The three drift-detection error measures for one (stream, detector) run.
/// All three are absent exactly when there were no detections.
struct EvaluationResult {
  std::optional<double> d1;     // mean detection-to-nearest-drift distance
  std::optional<double> d2;     // mean drift-to-nearest-detection distance
  std::optional<double> r_err;  // adjusted drift/detection count ratio
  std::size_t n_drifts = 0;
  std::size_t n_detections = 0;
};

/// Mean over detections of the distance to the nearest drift.
std::optional<double> d1(const std::vector<std::size_t>& detections,
                         const std::vector<std::size_t>& drifts);

/// Mean over drifts of the distance to the nearest detection.
std::optional<double> d2(const std::vector<std::size_t>& detections,
                         const std::vector<std::size_t>& drifts);

/// R = |1 - n_drifts / n_detections|.
std::optional<double> ratio_error(const std::vector<std::size_t>& detections,
                                  const std::vector<std::size_t>& drifts);

EvaluationResult evaluate(const std::vector<std::size_t>& detections,
                          const std::vector<std::size_t>& drifts);

/// Mean rank per method over an error table (rows = methods, columns =
/// stream configurations). Rank 1 is the lowest error; ties get midranks.
/// Any absent cell is an error naming the offending method -- such methods
/// must be excluded by the caller first.
std::vector<double> mean_ranks(
    const std::vector<std::vector<std::optional<double>>>& error_table,
    const std::vector<std::string>& method_names);

/// Nemenyi critical difference at alpha = 0.05:
/// CD = q(k) * sqrt(k (k+1) / (6 N)), q from the pinned studentized-range
/// table for k in [2, 10].
double nemenyi_cd(std::size_t k_methods, std::size_t n_datasets);

}  // namespace driftbench
