// SPDX-License-Identifier: Apache-2.0
//
// Throughput comparison of the serial reference sampler against the OpenMP
// kernel on the embedded instance. Both must produce identical counts.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "evc/sampler.hpp"
#include "evc/selftest.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 8000000ull;
  unsigned workers = argc > 2 ? static_cast<unsigned>(std::strtoul(argv[2], nullptr, 10)) : 0;
  std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 0;
  if (workers == 0) {
#ifdef _OPENMP
    workers = static_cast<unsigned>(omp_get_max_threads());
#else
    workers = 1;
#endif
  }

  evc::Instance inst = evc::selftest::running_instance();
  evc::MaximalCouplingPlan plan = evc::maximal_coupling_plan(inst.mu, inst.nu);

  std::printf("sampler benchmark: n=%llu workers=%u seed=%llu\n",
              static_cast<unsigned long long>(n), workers,
              static_cast<unsigned long long>(seed));

  auto t0 = std::chrono::steady_clock::now();
  evc::SampleReport serial = evc::sample_plan_serial(plan, inst.mu, n, seed, workers);
  double serial_s = seconds_since(t0);

  auto t1 = std::chrono::steady_clock::now();
  evc::SampleReport parallel = evc::sample_plan(plan, inst.mu, n, seed, workers);
  double parallel_s = seconds_since(t1);

  if (serial.counts != parallel.counts) {
    std::printf("FAIL: OpenMP counts differ from the serial reference\n");
    return 1;
  }

  std::printf("serial    %8.3f s  %7.2f Mdraws/s\n", serial_s,
              static_cast<double>(n) / serial_s / 1e6);
  std::printf("openmp    %8.3f s  %7.2f Mdraws/s  (speedup %.2fx)\n", parallel_s,
              static_cast<double>(n) / parallel_s / 1e6, serial_s / parallel_s);
  std::printf("counts identical across both kernels\n");
  return 0;
}
