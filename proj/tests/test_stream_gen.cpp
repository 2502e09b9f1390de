#include <doctest.h>

#include "matrix_eq.hpp"

#include <cmath>

#include "driftbench/stream_gen.hpp"

using namespace driftbench;

namespace {

StreamSpec base_spec(std::size_t drifts, DriftDynamics dyn = DriftDynamics::sudden) {
  return StreamSpec::make(dyn, drifts, 30, 42);
}

}  // namespace

TEST_CASE("drift centers for 250 chunks and 10 drifts") {
  auto sched = build_schedule(base_spec(10));
  CHECK(sched.centers == std::vector<std::size_t>{12, 37, 62, 87, 112, 137,
                                                  162, 187, 212, 237});
}

TEST_CASE("no drifts gives an empty schedule") {
  auto sched = build_schedule(base_spec(0));
  CHECK(sched.centers.empty());
}

TEST_CASE("drift centers for 3 drifts") {
  auto sched = build_schedule(base_spec(3));
  CHECK(sched.centers == std::vector<std::size_t>{41, 125, 208});
}

TEST_CASE("mix probability at the center is one half") {
  for (auto dyn : {DriftDynamics::sudden, DriftDynamics::gradual}) {
    auto spec = base_spec(10, dyn);
    auto sched = build_schedule(spec);
    for (std::size_t i = 0; i < sched.centers.size(); ++i)
      CHECK(concept_mix_probability(sched.centers[i], i, spec, sched) ==
            doctest::Approx(0.5));
  }
}

TEST_CASE("sudden slope saturates one chunk past the center") {
  auto spec = base_spec(10);
  auto sched = build_schedule(spec);
  CHECK(concept_mix_probability(sched.centers[0] + 1, 0, spec, sched) >
        0.999999);
  CHECK(concept_mix_probability(sched.centers[0] - 1, 0, spec, sched) <
        1e-6);
}

TEST_CASE("gradual mix probability matches the logistic form") {
  auto spec = base_spec(10, DriftDynamics::gradual);
  auto sched = build_schedule(spec);
  // W = 250 / 20 = 12.5, six chunks past a center: logistic(5 * 6 / 12.5).
  double expected = 1.0 / (1.0 + std::exp(-5.0 * 6.0 / 12.5));
  CHECK(concept_mix_probability(sched.centers[3] + 6, 3, spec, sched) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.9168).epsilon(1e-3));
}

TEST_CASE("crossover chunk sits within one chunk of the center") {
  auto spec = base_spec(10);
  auto sched = build_schedule(spec);
  for (std::size_t i = 0; i < sched.centers.size(); ++i) {
    std::size_t first_above = 0;
    for (std::size_t k = 0; k < spec.n_chunks; ++k) {
      if (concept_mix_probability(k, i, spec, sched) > 0.5) {
        first_above = k;
        break;
      }
    }
    CHECK(first_above >= sched.centers[i]);
    CHECK(first_above <= sched.centers[i] + 1);
  }
}

TEST_CASE("chunk shapes and informative feature count") {
  auto spec = base_spec(10);
  CHECK(spec.n_informative() == 9);
  auto stream = generate_stream(spec);
  REQUIRE(stream.chunks.size() == 250);
  CHECK(stream.chunks[0].features.rows() == 200);
  CHECK(stream.chunks[0].features.cols() == 30);
  CHECK(stream.chunks[0].labels.size() == 200);
  std::size_t total = 0;
  for (const auto& c : stream.chunks) total += c.n_samples();
  CHECK(total == 50'000);
}

TEST_CASE("stream generation is deterministic") {
  auto spec = base_spec(3);
  spec.n_chunks = 20;
  auto a = generate_stream(spec);
  auto b = generate_stream(spec);
  REQUIRE(a.chunks.size() == b.chunks.size());
  for (std::size_t k = 0; k < a.chunks.size(); ++k) {
    CHECK(driftbench::testutil::same(a.chunks[k].features, b.chunks[k].features));
    CHECK(a.chunks[k].labels == b.chunks[k].labels);
  }
  CHECK(a.schedule.centers == b.schedule.centers);
}

TEST_CASE("stationary stream follows concept zero") {
  auto spec = base_spec(0);
  spec.n_chunks = 50;
  auto stream = generate_stream(spec);

  // Rebuild the concept set via the same derivation the generator uses.
  Rng rng = Rng::derive(spec.seed, "stream", 0);
  auto concepts = draw_concepts(spec, rng);

  // Empirical class-conditional informative means over all chunks.
  std::size_t informative = spec.n_informative();
  for (std::size_t cls = 0; cls < 2; ++cls) {
    std::vector<double> sums(informative, 0.0);
    std::size_t count = 0;
    for (const auto& chunk : stream.chunks) {
      for (std::size_t row = 0; row < chunk.n_samples(); ++row) {
        if (chunk.labels[row] != cls) continue;
        count += 1;
        for (std::size_t f = 0; f < informative; ++f)
          sums[f] += chunk.features(static_cast<Eigen::Index>(row),
                                    static_cast<Eigen::Index>(f));
      }
    }
    REQUIRE(count > 1000);
    for (std::size_t f = 0; f < informative; ++f) {
      double err = sums[f] / static_cast<double>(count) -
                   concepts.means[0][cls][f];
      CHECK(std::fabs(err) < 5.0 / std::sqrt(static_cast<double>(count)));
    }
  }
}

TEST_CASE("sudden segments use a single concept away from centers") {
  auto spec = base_spec(3);
  auto sched = build_schedule(spec);
  // Midway between centers the mix probability is fully saturated; a chunk
  // there draws every sample from one concept.
  std::size_t k = (sched.centers[0] + sched.centers[1]) / 2;
  for (std::size_t i = 0; i < sched.centers.size(); ++i) {
    double p = concept_mix_probability(k, i, spec, sched);
    CHECK((p < 1e-9 || p > 1.0 - 1e-9));
  }
}

TEST_CASE("class balance over ten-chunk windows") {
  auto spec = base_spec(5);
  spec.n_chunks = 50;
  auto stream = generate_stream(spec);
  double se = 0.5 / std::sqrt(10.0 * 200.0);
  for (std::size_t start = 0; start + 10 <= stream.chunks.size(); start += 10) {
    std::size_t ones = 0;
    for (std::size_t k = start; k < start + 10; ++k)
      for (auto label : stream.chunks[k].labels) ones += label;
    double frac = static_cast<double>(ones) / 2000.0;
    CHECK(std::fabs(frac - 0.5) <= 3.0 * se);
  }
}

TEST_CASE("expected new-concept fraction is non-decreasing within a window") {
  auto spec = base_spec(10, DriftDynamics::gradual);
  auto sched = build_schedule(spec);
  for (std::size_t i = 0; i < sched.centers.size(); ++i) {
    double prev = 0.0;
    for (std::size_t k = i == 0 ? 0 : sched.centers[i - 1] + 1;
         k <= (i + 1 < sched.centers.size() ? sched.centers[i + 1] - 1
                                            : spec.n_chunks - 1);
         ++k) {
      double p = concept_mix_probability(k, i, spec, sched);
      CHECK(p >= prev);
      prev = p;
    }
  }
}

TEST_CASE("spec validation rejects bad parameters") {
  auto spec = base_spec(3);
  spec.informative_fraction = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = base_spec(3);
  spec.n_chunks = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = base_spec(3);
  spec.chunk_size = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
