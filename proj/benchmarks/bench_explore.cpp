// Times the serial reference explorer against the OpenMP one on the same
// workload. The outputs must be identical schedule for schedule and trace
// for trace; any divergence aborts the benchmark, because a parallel
// speedup that changes results is worthless here.

#include "edhoc/environment.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

using namespace edhoc;

namespace {

template <typename F>
double wall_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
  const std::size_t seeds =
      argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 300;
  const Bounds bounds;
  std::printf("explore benchmark: %zu seeds per method, %d thread(s)\n",
              seeds, omp_get_max_threads());
  std::printf("%-10s %12s %12s %9s\n", "method", "serial[ms]", "openmp[ms]",
              "speedup");

  for (const char* name : {"sig-sig", "stat-sig", "psk-psk"}) {
    const MethodPair m = *parse_method(name);
    std::vector<ExploreOutcome> serial, parallel;
    const double ts = wall_ms([&] { serial = explore_serial(m, seeds, bounds); });
    const double tp =
        wall_ms([&] { parallel = explore_parallel(m, seeds, bounds); });

    if (serial.size() != parallel.size()) {
      std::fprintf(stderr, "%s: result count mismatch\n", name);
      return 1;
    }
    for (std::size_t i = 0; i < serial.size(); ++i) {
      if (schedule_to_json(serial[i].schedule) !=
              schedule_to_json(parallel[i].schedule) ||
          trace_to_jsonl(serial[i].trace) !=
              trace_to_jsonl(parallel[i].trace)) {
        std::fprintf(stderr, "%s: divergence at seed index %zu\n", name, i);
        return 1;
      }
    }
    std::printf("%-10s %12.1f %12.1f %8.2fx\n", name, ts, tp, ts / tp);
  }
  return 0;
}
