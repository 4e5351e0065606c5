// Times the serial reference implementations against the OpenMP kernels for
// the two data-parallel hot paths: the Monte Carlo trial loop and the region
// rasterizer. Also cross-checks that both modes produce identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hetnet/montecarlo.hpp"
#include "hetnet/regions.hpp"

using namespace hetnet;

namespace {

template <class F>
double timed(const F& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  return dt.count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   identical: %s\n",
              name, serial_s, parallel_s, serial_s / parallel_s, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t trials = 20000;
  if (argc > 1) trials = std::atoll(argv[1]);

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; parallel mode falls back to the serial loop\n");
#endif

  NetworkModel model;
  model.alpha = 4.0;
  model.tiers = {TierParams{100.0, 1e-6, db_to_linear(3.0)},
                 TierParams{1.0, 2e-6, db_to_linear(1.0)}};
  const AccessPolicy policy = AccessPolicy::open();

  SimulationConfig config;
  config.trials = trials;
  config.seed = 42;
  config.window_radius = 25000.0;  // about 5900 stations per trial

  std::vector<TrialOutcome> serial_outcomes, parallel_outcomes;
  config.mode = ExecutionMode::kSerial;
  const double mc_serial = timed([&] { serial_outcomes = run_trials(model, policy, config); });
  config.mode = ExecutionMode::kParallel;
  const double mc_parallel = timed([&] { parallel_outcomes = run_trials(model, policy, config); });
  const bool mc_same =
      serial_outcomes.size() == parallel_outcomes.size() &&
      std::memcmp(serial_outcomes.data(), parallel_outcomes.data(),
                  serial_outcomes.size() * sizeof(TrialOutcome)) == 0;
  report("monte carlo trials", mc_serial, mc_parallel, mc_same);

  const Deployment deployment = sample_deployment(model, config, 0);
  RegionRaster serial_raster, parallel_raster;
  const double rr_serial = timed([&] {
    serial_raster = rasterize(deployment, model, 640, 640, 30000.0, ExecutionMode::kSerial);
  });
  const double rr_parallel = timed([&] {
    parallel_raster = rasterize(deployment, model, 640, 640, 30000.0, ExecutionMode::kParallel);
  });
  const bool rr_same = serial_raster.station == parallel_raster.station &&
                       serial_raster.tier == parallel_raster.tier;
  report("region rasterizer", rr_serial, rr_parallel, rr_same);
  return (mc_same && rr_same) ? 0 : 1;
}
