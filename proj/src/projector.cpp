#include "driftbench/projector.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace driftbench {

std::size_t RandomMLP::n_parameters() const {
  return static_cast<std::size_t>(hidden_weights.size() + hidden_bias.size() +
                                  output_weights.size() + output_bias.size());
}

RandomMLP init_network(std::size_t n_features, std::size_t n_hidden,
                       std::size_t n_outputs, Rng& rng) {
  if (n_features < 1 || n_hidden < 1 || n_outputs < 1)
    throw std::invalid_argument("init_network: zero-sized dimension");

  RandomMLP net;
  net.hidden_weights.resize(static_cast<Eigen::Index>(n_features),
                            static_cast<Eigen::Index>(n_hidden));
  net.hidden_bias.resize(static_cast<Eigen::Index>(n_hidden));
  net.output_weights.resize(static_cast<Eigen::Index>(n_hidden),
                            static_cast<Eigen::Index>(n_outputs));
  net.output_bias.resize(static_cast<Eigen::Index>(n_outputs));

  // Draw order is pinned: W1 row-major, b1, W2 row-major, b2.
  for (Eigen::Index i = 0; i < net.hidden_weights.rows(); ++i)
    for (Eigen::Index j = 0; j < net.hidden_weights.cols(); ++j)
      net.hidden_weights(i, j) = kWeightStd * rng.next_standard_normal();
  for (Eigen::Index j = 0; j < net.hidden_bias.size(); ++j)
    net.hidden_bias(j) = kWeightStd * rng.next_standard_normal();
  for (Eigen::Index i = 0; i < net.output_weights.rows(); ++i)
    for (Eigen::Index j = 0; j < net.output_weights.cols(); ++j)
      net.output_weights(i, j) = kWeightStd * rng.next_standard_normal();
  for (Eigen::Index j = 0; j < net.output_bias.size(); ++j)
    net.output_bias(j) = kWeightStd * rng.next_standard_normal();
  return net;
}

namespace {

void forward_row(const RandomMLP& net, const Eigen::MatrixXd& features,
                 Eigen::MatrixXd& out, Eigen::Index row) {
  const Eigen::Index n_hidden = net.hidden_bias.size();
  const Eigen::Index n_out = net.output_bias.size();
  Eigen::VectorXd hidden(n_hidden);
  for (Eigen::Index h = 0; h < n_hidden; ++h) {
    double acc = net.hidden_bias(h);
    for (Eigen::Index f = 0; f < features.cols(); ++f)
      acc += features(row, f) * net.hidden_weights(f, h);
    hidden(h) = acc > 0.0 ? acc : 0.0;
  }
  for (Eigen::Index o = 0; o < n_out; ++o) {
    double acc = net.output_bias(o);
    for (Eigen::Index h = 0; h < n_hidden; ++h)
      acc += hidden(h) * net.output_weights(h, o);
    out(row, o) = acc;
  }
}

}  // namespace

Eigen::MatrixXd forward_serial(const RandomMLP& net,
                               const Eigen::MatrixXd& features) {
  if (features.cols() != net.hidden_weights.rows())
    throw std::invalid_argument("forward: feature width does not match network input");
  Eigen::MatrixXd out(features.rows(), net.output_bias.size());
  for (Eigen::Index row = 0; row < features.rows(); ++row)
    forward_row(net, features, out, row);
  return out;
}

Eigen::MatrixXd forward(const RandomMLP& net, const Eigen::MatrixXd& features) {
  if (features.cols() != net.hidden_weights.rows())
    throw std::invalid_argument("forward: feature width does not match network input");
  Eigen::MatrixXd out(features.rows(), net.output_bias.size());
  const Eigen::Index rows = features.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index row = 0; row < rows; ++row)
    forward_row(net, features, out, row);
  return out;
}

Eigen::MatrixXd forward(const RandomMLP& net, const Chunk& chunk) {
  return forward(net, chunk.features);
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows) {
  Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                    .get<double>();
  return m;
}

}  // namespace

std::string RandomMLP::to_json() const {
  nlohmann::json doc;
  doc["n_inputs"] = n_inputs();
  doc["n_hidden"] = n_hidden();
  doc["n_outputs"] = n_outputs();
  doc["hidden_weights"] = matrix_to_json(hidden_weights);
  doc["hidden_bias"] = std::vector<double>(hidden_bias.begin(), hidden_bias.end());
  doc["output_weights"] = matrix_to_json(output_weights);
  doc["output_bias"] = std::vector<double>(output_bias.begin(), output_bias.end());
  return doc.dump(2);
}

RandomMLP RandomMLP::from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  RandomMLP net;
  net.hidden_weights = matrix_from_json(doc.at("hidden_weights"));
  net.output_weights = matrix_from_json(doc.at("output_weights"));
  auto b1 = doc.at("hidden_bias").get<std::vector<double>>();
  auto b2 = doc.at("output_bias").get<std::vector<double>>();
  net.hidden_bias = Eigen::Map<Eigen::VectorXd>(b1.data(), static_cast<Eigen::Index>(b1.size()));
  net.output_bias = Eigen::Map<Eigen::VectorXd>(b2.data(), static_cast<Eigen::Index>(b2.size()));
  if (net.hidden_weights.rows() != static_cast<Eigen::Index>(doc.at("n_inputs").get<std::size_t>()))
    throw std::invalid_argument("network json: shape header mismatch");
  return net;
}

}  // namespace driftbench
