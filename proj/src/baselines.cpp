#include "driftbench/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace driftbench {

// ---------------------------------------------------------------- GaussianNB

GaussianNB::GaussianNB(std::size_t n_features) : n_features_(n_features) {
  for (auto& v : means_) v.assign(n_features_, 0.0);
  for (auto& v : m2_) v.assign(n_features_, 0.0);
}

void GaussianNB::reset() {
  counts_ = {0, 0};
  for (auto& v : means_) v.assign(n_features_, 0.0);
  for (auto& v : m2_) v.assign(n_features_, 0.0);
}

void GaussianNB::partial_fit(const Eigen::MatrixXd& features,
                             const std::vector<std::uint8_t>& labels) {
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    throw std::invalid_argument("gnb: feature rows and labels differ");
  if (static_cast<std::size_t>(features.cols()) != n_features_)
    throw std::invalid_argument("gnb: feature width mismatch");
  for (std::size_t row = 0; row < labels.size(); ++row) {
    std::size_t cls = labels[row] ? 1 : 0;
    counts_[cls] += 1;
    double n = static_cast<double>(counts_[cls]);
    for (std::size_t f = 0; f < n_features_; ++f) {
      double x = features(static_cast<Eigen::Index>(row),
                          static_cast<Eigen::Index>(f));
      double delta = x - means_[cls][f];
      means_[cls][f] += delta / n;
      m2_[cls][f] += delta * (x - means_[cls][f]);
    }
  }
}

double GaussianNB::variance(std::size_t cls, std::size_t feature) const {
  if (counts_[cls] < 2) return 0.0;
  return m2_[cls][feature] / static_cast<double>(counts_[cls]);
}

std::vector<std::uint8_t> GaussianNB::predict(
    const Eigen::MatrixXd& features) const {
  if (!fitted()) throw std::logic_error("gnb: predict before any fit");
  double total = static_cast<double>(counts_[0] + counts_[1]);

  double max_var = 0.0;
  for (std::size_t cls = 0; cls < 2; ++cls)
    for (std::size_t f = 0; f < n_features_; ++f)
      max_var = std::max(max_var, variance(cls, f));
  double smoothing = 1e-9 * max_var + 1e-18;

  std::vector<std::uint8_t> out(static_cast<std::size_t>(features.rows()));
  for (std::size_t row = 0; row < out.size(); ++row) {
    double best_score = -HUGE_VAL;
    std::uint8_t best_cls = 0;
    for (std::size_t cls = 0; cls < 2; ++cls) {
      if (counts_[cls] == 0) continue;
      double score = std::log(static_cast<double>(counts_[cls]) / total);
      for (std::size_t f = 0; f < n_features_; ++f) {
        double var = variance(cls, f) + smoothing;
        double d = features(static_cast<Eigen::Index>(row),
                            static_cast<Eigen::Index>(f)) -
                   means_[cls][f];
        score += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
      }
      if (score > best_score) {
        best_score = score;
        best_cls = static_cast<std::uint8_t>(cls);
      }
    }
    out[row] = best_cls;
  }
  return out;
}

// ----------------------------------------------------------------------- DDM

Ddm::Ddm(double drift_threshold, std::size_t min_samples)
    : drift_threshold_(drift_threshold), min_samples_(min_samples) {}

void Ddm::reset() {
  count_ = 0;
  p_ = 0.0;
  p_min_ = 1e18;
  s_min_ = 1e18;
}

StepVerdict Ddm::update(bool error) {
  count_ += 1;
  double n = static_cast<double>(count_);
  p_ += (static_cast<double>(error) - p_) / n;
  double s = std::sqrt(p_ * (1.0 - p_) / n);
  if (count_ < min_samples_) return StepVerdict::none;

  if (p_ + s < p_min_ + s_min_) {
    p_min_ = p_;
    s_min_ = s;
  }
  if (p_ + s > p_min_ + drift_threshold_ * s_min_) {
    reset();
    return StepVerdict::drift;
  }
  if (p_ + s > p_min_ + 2.0 * s_min_) return StepVerdict::warning;
  return StepVerdict::none;
}

// ---------------------------------------------------------------------- EDDM

Eddm::Eddm(double beta, std::size_t min_errors)
    : beta_(beta), min_errors_(min_errors) {}

void Eddm::reset() {
  sample_index_ = 0;
  last_error_index_.reset();
  n_errors_ = 0;
  dist_mean_ = 0.0;
  dist_m2_ = 0.0;
  max_level_ = 0.0;
}

StepVerdict Eddm::update(bool error) {
  std::size_t index = sample_index_++;
  if (!error) return StepVerdict::none;

  if (last_error_index_) {
    double dist = static_cast<double>(index - *last_error_index_);
    n_errors_ += 1;
    double n = static_cast<double>(n_errors_);
    double delta = dist - dist_mean_;
    dist_mean_ += delta / n;
    dist_m2_ += delta * (dist - dist_mean_);
    double std_dev = n >= 2 ? std::sqrt(dist_m2_ / n) : 0.0;
    double level = dist_mean_ + 2.0 * std_dev;
    max_level_ = std::max(max_level_, level);

    if (n_errors_ >= min_errors_ && max_level_ > 0.0) {
      double ratio = level / max_level_;
      if (ratio < beta_) {
        last_error_index_ = index;
        auto keep = sample_index_;
        reset();
        sample_index_ = keep;
        return StepVerdict::drift;
      }
      if (ratio < 0.95) {
        last_error_index_ = index;
        return StepVerdict::warning;
      }
    }
  }
  last_error_index_ = index;
  return StepVerdict::none;
}

// --------------------------------------------------------------------- ADWIN

Adwin::Adwin(double delta, std::size_t max_buckets_per_level)
    : delta_(delta), max_buckets_(max_buckets_per_level) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("adwin: delta must be in (0, 1)");
}

void Adwin::insert(double value) {
  buckets_.push_back({value, value * value, 1});
  total_ += value;
  var_sum_ += value * value;
  width_ += 1;
  compress();
}

void Adwin::compress() {
  // Merge the two oldest buckets of any width that exceeds capacity.
  bool merged = true;
  while (merged) {
    merged = false;
    std::size_t run_width = 0, run_count = 0, run_first = 0;
    for (std::size_t i = buckets_.size(); i-- > 0;) {
      if (buckets_[i].width != run_width) {
        run_width = buckets_[i].width;
        run_count = 1;
        run_first = i;
      } else {
        run_count += 1;
        run_first = i;
      }
      if (run_count > max_buckets_) {
        // Oldest two of this width sit at run_first and run_first + 1.
        buckets_[run_first + 1].sum += buckets_[run_first].sum;
        buckets_[run_first + 1].sum_sq += buckets_[run_first].sum_sq;
        buckets_[run_first + 1].width *= 2;
        buckets_.erase(buckets_.begin() + static_cast<std::ptrdiff_t>(run_first));
        merged = true;
        break;
      }
    }
  }
}

bool Adwin::detect_and_shrink() {
  bool any_cut = false;
  bool found = true;
  while (found && buckets_.size() >= 2) {
    found = false;
    double n = static_cast<double>(width_);
    double window_mean = total_ / n;
    double window_var =
        std::max(var_sum_ / n - window_mean * window_mean, 0.0);
    double log_term = std::log(2.0 * n / delta_);  // ln(2 / delta'), delta' = delta / n

    double left_sum = 0.0;
    double left_width = 0.0;
    for (std::size_t cut = 0; cut + 1 < buckets_.size(); ++cut) {
      left_sum += buckets_[cut].sum;
      left_width += static_cast<double>(buckets_[cut].width);
      double right_width = n - left_width;
      double mu_left = left_sum / left_width;
      double mu_right = (total_ - left_sum) / right_width;
      double m = 1.0 / (1.0 / left_width + 1.0 / right_width);
      double eps = std::sqrt(2.0 / m * window_var * log_term) +
                   2.0 / (3.0 * m) * log_term;
      if (std::fabs(mu_left - mu_right) >= eps) {
        // Drop everything up to the failing cut.
        for (std::size_t i = 0; i <= cut; ++i) {
          const auto& b = buckets_.front();
          total_ -= b.sum;
          var_sum_ -= b.sum_sq;
          width_ -= b.width;
          buckets_.pop_front();
        }
        var_sum_ = std::max(var_sum_, 0.0);
        any_cut = true;
        found = true;
        break;
      }
    }
  }
  return any_cut;
}

StepVerdict Adwin::update(double value) {
  if (!std::isfinite(value))
    throw std::invalid_argument("adwin: non-finite value");
  insert(value);
  return detect_and_shrink() ? StepVerdict::drift : StepVerdict::none;
}

// ---------------------------------------------------------------------- CDDD

Cddd::Cddd(double sensitivity, std::size_t warmup)
    : sensitivity_(sensitivity), warmup_(warmup) {}

Verdict Cddd::process_chunk(std::size_t chunk_index,
                            const Eigen::MatrixXd& features) {
  if (features.rows() == 0) throw std::invalid_argument("cddd: empty chunk");
  Eigen::VectorXd centroid = features.colwise().mean();
  Verdict verdict = Verdict::none;
  if (prev_centroid_) {
    double dist = (centroid - *prev_centroid_).norm();
    if (n_distances_ >= warmup_) {
      double running_mean = dist_sum_ / static_cast<double>(n_distances_);
      if (dist > (1.0 + sensitivity_) * running_mean) {
        detections_.push_back(chunk_index);
        verdict = Verdict::drift;
        n_distances_ = 0;
        dist_sum_ = 0.0;
      }
    }
    if (verdict == Verdict::none) {
      n_distances_ += 1;
      dist_sum_ += dist;
    }
  }
  prev_centroid_ = centroid;
  return verdict;
}

// ------------------------------------------------------- supervised protocol

std::vector<std::size_t> supervised_protocol(const std::vector<Chunk>& stream,
                                             SupervisedDetector detector,
                                             bool reset_on_drift) {
  if (stream.empty()) return {};
  GaussianNB classifier(stream.front().n_features());

  Ddm ddm;
  Eddm eddm;
  Adwin adwin;
  auto step = [&](bool error) -> StepVerdict {
    switch (detector) {
      case SupervisedDetector::ddm:
        return ddm.update(error);
      case SupervisedDetector::eddm:
        return eddm.update(error);
      case SupervisedDetector::adwin:
        return adwin.update(error ? 1.0 : 0.0);
    }
    return StepVerdict::none;
  };

  std::vector<std::size_t> detections;
  classifier.partial_fit(stream[0].features, stream[0].labels);

  for (std::size_t k = 1; k < stream.size(); ++k) {
    const Chunk& chunk = stream[k];
    auto preds = classifier.predict(chunk.features);
    bool fired = false;
    for (std::size_t m = 0; m < preds.size(); ++m) {
      bool error = preds[m] != chunk.labels[m];
      if (step(error) == StepVerdict::drift && !fired) {
        detections.push_back(chunk.index);  // one detection row per chunk
        fired = true;
      }
    }
    if (fired && reset_on_drift) classifier.reset();
    classifier.partial_fit(chunk.features, chunk.labels);
  }
  return detections;
}

}  // namespace driftbench
