// Timing comparison of the serial reference kernels against the
// OpenMP-parallel paths: projector forward pass and a full detector run.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "driftbench/padd.hpp"
#include "driftbench/projector.hpp"
#include "driftbench/stream_gen.hpp"

using namespace driftbench;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  int threads = omp_get_max_threads();
#else
  int threads = 1;
#endif
  std::printf("threads available: %d\n\n", threads);

  // Forward pass on a large batch.
  Rng rng(7);
  RandomMLP net = init_network(90, kDefaultHidden, kDefaultOutputs, rng);
  Eigen::MatrixXd batch(20000, 90);
  for (Eigen::Index i = 0; i < batch.rows(); ++i)
    for (Eigen::Index j = 0; j < batch.cols(); ++j)
      batch(i, j) = rng.next_standard_normal();

  auto t0 = Clock::now();
  Eigen::MatrixXd serial = forward_serial(net, batch);
  double serial_ms = ms_since(t0);
  t0 = Clock::now();
  Eigen::MatrixXd parallel = forward(net, batch);
  double parallel_ms = ms_since(t0);
  bool identical = (serial - parallel).cwiseAbs().maxCoeff() == 0.0;
  std::printf("forward 20000x90:  serial %8.2f ms   omp %8.2f ms   bit-identical: %s\n",
              serial_ms, parallel_ms, identical ? "yes" : "NO");

  // Full detector run over a drifting stream (t-test loop is the hot path).
  StreamSpec spec = StreamSpec::make(DriftDynamics::sudden, 10, 90, 99);
  spec.n_chunks = 100;
  Stream stream = generate_stream(spec);

#ifdef _OPENMP
  omp_set_num_threads(1);
#endif
  t0 = Clock::now();
  auto detections_serial = padd_run(PaddParams::sudden_preset(), stream.chunks, 5);
  double padd_serial_ms = ms_since(t0);
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
  t0 = Clock::now();
  auto detections_parallel = padd_run(PaddParams::sudden_preset(), stream.chunks, 5);
  double padd_parallel_ms = ms_since(t0);
  std::printf("padd 100 chunks:   serial %8.2f ms   omp %8.2f ms   same verdicts: %s\n",
              padd_serial_ms, padd_parallel_ms,
              detections_serial == detections_parallel ? "yes" : "NO");
  return 0;
}
