#include "driftbench/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace driftbench {

namespace {

double nearest_distance(std::size_t point, const std::vector<std::size_t>& sorted) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), point);
  double best = HUGE_VAL;
  if (it != sorted.end())
    best = static_cast<double>(*it - point);
  if (it != sorted.begin())
    best = std::min(best, static_cast<double>(point - *(it - 1)));
  return best;
}

std::vector<std::size_t> sorted_copy(const std::vector<std::size_t>& v) {
  auto out = v;
  std::sort(out.begin(), out.end());
  return out;
}

void require_drifts(const std::vector<std::size_t>& drifts) {
  if (drifts.empty())
    throw std::invalid_argument("drift error measures need a non-empty ground truth");
}

}  // namespace

std::optional<double> d1(const std::vector<std::size_t>& detections,
                         const std::vector<std::size_t>& drifts) {
  require_drifts(drifts);
  if (detections.empty()) return std::nullopt;
  auto sorted_drifts = sorted_copy(drifts);
  double sum = 0.0;
  for (auto det : detections) sum += nearest_distance(det, sorted_drifts);
  return sum / static_cast<double>(detections.size());
}

std::optional<double> d2(const std::vector<std::size_t>& detections,
                         const std::vector<std::size_t>& drifts) {
  require_drifts(drifts);
  if (detections.empty()) return std::nullopt;
  auto sorted_dets = sorted_copy(detections);
  double sum = 0.0;
  for (auto drift : drifts) sum += nearest_distance(drift, sorted_dets);
  return sum / static_cast<double>(drifts.size());
}

std::optional<double> ratio_error(const std::vector<std::size_t>& detections,
                                  const std::vector<std::size_t>& drifts) {
  require_drifts(drifts);
  if (detections.empty()) return std::nullopt;
  return std::fabs(1.0 - static_cast<double>(drifts.size()) /
                             static_cast<double>(detections.size()));
}

EvaluationResult evaluate(const std::vector<std::size_t>& detections,
                          const std::vector<std::size_t>& drifts) {
  EvaluationResult res;
  res.n_drifts = drifts.size();
  res.n_detections = detections.size();
  res.d1 = d1(detections, drifts);
  res.d2 = d2(detections, drifts);
  res.r_err = ratio_error(detections, drifts);
  return res;
}

std::vector<double> mean_ranks(
    const std::vector<std::vector<std::optional<double>>>& error_table,
    const std::vector<std::string>& method_names) {
  std::size_t k = error_table.size();
  if (k == 0) return {};
  if (method_names.size() != k)
    throw std::invalid_argument("mean_ranks: method name count mismatch");
  std::size_t n = error_table[0].size();
  for (std::size_t m = 0; m < k; ++m) {
    if (error_table[m].size() != n)
      throw std::invalid_argument("mean_ranks: ragged error table");
    for (const auto& cell : error_table[m])
      if (!cell.has_value())
        throw std::invalid_argument("mean_ranks: method '" + method_names[m] +
                                    "' has undefined cells and must be excluded");
  }

  std::vector<double> rank_sums(k, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return *error_table[a][col] < *error_table[b][col];
    });
    for (std::size_t i = 0; i < k;) {
      std::size_t j = i;
      while (j < k && *error_table[order[j]][col] == *error_table[order[i]][col])
        ++j;
      double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
      for (std::size_t idx = i; idx < j; ++idx) rank_sums[order[idx]] += midrank;
      i = j;
    }
  }
  for (auto& s : rank_sums) s /= static_cast<double>(n);
  return rank_sums;
}

double nemenyi_cd(std::size_t k_methods, std::size_t n_datasets) {
  // q_0.05 values (studentized range / sqrt(2)) for k = 2..10.
  static constexpr std::array<double, 9> q_table = {
      1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164};
  if (k_methods < 2 || k_methods > 10)
    throw std::invalid_argument("nemenyi_cd: k must be in [2, 10]");
  if (n_datasets == 0)
    throw std::invalid_argument("nemenyi_cd: need at least one dataset");
  double k = static_cast<double>(k_methods);
  double n = static_cast<double>(n_datasets);
  return q_table[k_methods - 2] * std::sqrt(k * (k + 1.0) / (6.0 * n));
}

}  // namespace driftbench
