// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evc/error.hpp"
#include "evc/sampler.hpp"
#include "evc/selftest.hpp"

using namespace evc;

namespace {

Instance running() { return selftest::running_instance(); }

MaximalCouplingPlan running_plan(const Instance& inst) {
  return maximal_coupling_plan(inst.mu, inst.nu);
}

}  // namespace

TEST_CASE("same seed and worker count give identical counts") {
  Instance inst = running();
  auto plan = running_plan(inst);
  SampleReport first = sample_plan(plan, inst.mu, 20000, 12345, 4);
  SampleReport second = sample_plan(plan, inst.mu, 20000, 12345, 4);
  CHECK(first.counts == second.counts);
  CHECK(first.empirical_leave_rate == second.empirical_leave_rate);
  CHECK(sample_report_to_json(first) == sample_report_to_json(second));

  SampleReport other_seed = sample_plan(plan, inst.mu, 20000, 54321, 4);
  CHECK(first.counts != other_seed.counts);
}

TEST_CASE("OpenMP kernel matches the serial reference for any worker count") {
  Instance inst = running();
  auto plan = running_plan(inst);
  for (unsigned workers : {1u, 3u, 4u, 7u}) {
    SampleReport parallel = sample_plan(plan, inst.mu, 30011, 7, workers);
    SampleReport serial = sample_plan_serial(plan, inst.mu, 30011, 7, workers);
    CHECK(parallel.counts == serial.counts);
    CHECK(parallel.workers == workers);
    std::uint64_t total = 0;
    for (const auto& [cell, c] : parallel.counts) {
      (void)cell;
      total += c;
    }
    CHECK(total == 30011);
  }
}

TEST_CASE("degenerate plans sample the diagonal exactly") {
  Instance inst = running();
  MaximalCouplingPlan plan = maximal_coupling_plan(inst.mu, inst.mu);
  SampleReport report = sample_plan(plan, inst.mu, 5000, 3);
  CHECK(report.empirical_leave_rate == 0.0);
  CHECK(report.empirical_not_e_rate == 0.0);
  for (const auto& [cell, c] : report.counts) {
    (void)c;
    CHECK(cell.first == cell.second);
  }
}

TEST_CASE("empirical leave rate concentrates around the exact TV") {
  Instance inst = running();
  auto plan = running_plan(inst);
  const std::uint64_t n = 100000;
  const double bound = 4.0 * std::sqrt(0.3 * 0.7 / static_cast<double>(n));
  SampleReport report = sample_plan(plan, inst.mu, n, 1);
  CHECK(std::abs(report.empirical_leave_rate - 0.3) <= bound);
  CHECK(report.empirical_not_e_rate == report.empirical_leave_rate);
}

TEST_CASE("cell frequencies track the exact law") {
  Instance inst = running();
  auto plan = running_plan(inst);
  ExactLaw law = exact_coupling_law(plan, inst.mu);
  const std::uint64_t n = 200000;
  SampleReport report = sample_plan(plan, inst.mu, n, 9);
  for (const auto& [cell, mass] : law.joint.joint()) {
    double p = mass.to_double();
    if (p < 0.01) continue;
    auto it = report.counts.find(cell);
    REQUIRE(it != report.counts.end());
    double freq = static_cast<double>(it->second) / static_cast<double>(n);
    CHECK(std::abs(freq - p) <= 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)));
  }
  // and no mass appears where the law has none
  for (const auto& [cell, c] : report.counts) {
    (void)c;
    CHECK(!law.joint.at(cell.first, cell.second).is_zero());
  }
}

TEST_CASE("sampler input validation") {
  Instance inst = running();
  auto plan = running_plan(inst);
  CHECK_THROWS_AS((void)sample_plan(plan, inst.mu, 0, 1), Error);
  CHECK_THROWS_AS((void)sample_plan(plan, inst.mu, 10, 1, 0), Error);
  CHECK_THROWS_WITH_AS((void)sample_plan(plan, inst.nu, 10, 1),
                       doctest::Contains("PlanMismatch"), Error);
}
