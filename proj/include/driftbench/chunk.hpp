#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace driftbench {

/// One batch of a data stream.
struct Chunk {
  std::size_t index = 0;                  // chunk ordinal, 0-based
  Eigen::MatrixXd features;               // n_samples x n_features
  std::vector<std::uint8_t> labels;       // binary, length n_samples

  std::size_t n_samples() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t n_features() const { return static_cast<std::size_t>(features.cols()); }
};

}  // namespace driftbench
