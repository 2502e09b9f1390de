#pragma once

#include <Eigen/Dense>
#include <string>

#include "driftbench/chunk.hpp"
#include "driftbench/rng.hpp"

namespace driftbench {

/// Frozen random-weight network: one ReLU hidden layer, linear output layer.
/// Weights and biases are drawn once from N(0, 0.1) and never modified.
struct RandomMLP {
  Eigen::MatrixXd hidden_weights;  // n_features x n_hidden
  Eigen::VectorXd hidden_bias;     // n_hidden
  Eigen::MatrixXd output_weights;  // n_hidden x n_outputs
  Eigen::VectorXd output_bias;     // n_outputs

  std::size_t n_inputs() const { return static_cast<std::size_t>(hidden_weights.rows()); }
  std::size_t n_hidden() const { return static_cast<std::size_t>(hidden_weights.cols()); }
  std::size_t n_outputs() const { return static_cast<std::size_t>(output_weights.cols()); }
  std::size_t n_parameters() const;

  std::string to_json() const;
  static RandomMLP from_json(const std::string& text);
};

constexpr double kWeightStd = 0.1;
constexpr std::size_t kDefaultHidden = 10;
constexpr std::size_t kDefaultOutputs = 12;

RandomMLP init_network(std::size_t n_features, std::size_t n_hidden,
                       std::size_t n_outputs, Rng& rng);

/// A = relu(X * W1 + b1) * W2 + b2, rows aligned with input rows.
/// OpenMP-parallel over sample rows; bit-identical to forward_serial.
Eigen::MatrixXd forward(const RandomMLP& net, const Eigen::MatrixXd& features);
Eigen::MatrixXd forward(const RandomMLP& net, const Chunk& chunk);

/// Plain-loop reference path, kept for testing and benchmarking.
Eigen::MatrixXd forward_serial(const RandomMLP& net,
                               const Eigen::MatrixXd& features);

}  // namespace driftbench
