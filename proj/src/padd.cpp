#include "driftbench/padd.hpp"

#include <stdexcept>

namespace driftbench {

void PaddParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("padd: alpha must be in (0, 1)");
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("padd: theta must be in (0, 1)");
  if (n_outputs < 1 || replications < 1 || sample_size < 2)
    throw std::invalid_argument("padd: e, r must be >= 1 and s >= 2");
}

PaddDetector::PaddDetector(const PaddParams& params, std::size_t n_features,
                           std::uint64_t seed)
    : params_(params),
      net_([&] {
        params.validate();
        if (n_features < 1) throw std::invalid_argument("padd: n_features must be >= 1");
        Rng net_rng = Rng::derive(seed, "net", 0);
        return init_network(n_features, kDefaultHidden, params.n_outputs, net_rng);
      }()),
      history_(params.n_outputs),
      rng_(Rng::derive(seed, "subsample", 0)) {}

Verdict PaddDetector::process_chunk(std::size_t chunk_index,
                                    const Eigen::MatrixXd& features) {
  Eigen::MatrixXd activations = forward(net_, features);
  const std::size_t e = params_.n_outputs;
  const std::size_t r = params_.replications;
  const std::size_t s = params_.sample_size;
  const auto rows = static_cast<std::size_t>(activations.rows());

  Verdict verdict = Verdict::none;
  if (!history_[0].empty()) {
    // Subsample indices are drawn sequentially in a pinned order (outputs
    // outer, replications inner, current before past), so the verdict is
    // independent of how the tests below are scheduled.
    struct TestDraw {
      std::vector<std::size_t> current, past;
    };
    std::vector<TestDraw> draws(e * r);
    for (std::size_t out = 0; out < e; ++out) {
      for (std::size_t rep = 0; rep < r; ++rep) {
        auto& d = draws[out * r + rep];
        d.current = rng_.sample_distinct_indices(rows, s);
        d.past = rng_.sample_distinct_indices(history_[out].size(), s);
      }
    }

    std::size_t counter = 0;
#pragma omp parallel for schedule(static) reduction(+ : counter)
    for (std::size_t test = 0; test < e * r; ++test) {
      std::size_t out = test / r;
      const auto& d = draws[test];
      std::vector<double> current_sample(s), past_sample(s);
      for (std::size_t i = 0; i < s; ++i) {
        current_sample[i] =
            activations(static_cast<Eigen::Index>(d.current[i]),
                        static_cast<Eigen::Index>(out));
        past_sample[i] = history_[out][d.past[i]];
      }
      if (t_test_independent(past_sample, current_sample).p < params_.alpha)
        counter += 1;
    }
    last_counter_ = counter;

    if (static_cast<double>(counter) >
        params_.theta * static_cast<double>(e) * static_cast<double>(r)) {
      for (auto& buf : history_) buf.clear();
      detections_.push_back(chunk_index);
      verdict = Verdict::drift;
    }
  } else {
    last_counter_ = 0;
  }

  for (std::size_t out = 0; out < e; ++out) {
    auto& buf = history_[out];
    buf.reserve(buf.size() + rows);
    for (std::size_t row = 0; row < rows; ++row)
      buf.push_back(activations(static_cast<Eigen::Index>(row),
                                static_cast<Eigen::Index>(out)));
  }
  return verdict;
}

std::vector<std::size_t> padd_run(const PaddParams& params,
                                  const std::vector<Chunk>& stream,
                                  std::uint64_t seed) {
  if (stream.empty()) throw std::invalid_argument("padd_run: empty stream");
  PaddDetector detector(params, stream.front().n_features(), seed);
  for (const auto& chunk : stream) detector.process_chunk(chunk);
  return detector.detections();
}

}  // namespace driftbench
