// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>

#include "evc/maximal_coupling.hpp"

namespace evc {

/// Monte Carlo draw counts for a maximal-coupling plan. The exact law is the
/// ground truth; the sampler is illustrative and uses 64-bit floats.
struct SampleReport {
  SpacePtr space;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::map<Coupling::Cell, std::uint64_t> counts;
  double empirical_leave_rate = 0.0;
  double empirical_not_e_rate = 0.0;
};

/// Default worker count for the sampler. Fixed (not hardware-derived) so that
/// default-configured runs are byte-identical across machines.
inline constexpr unsigned kDefaultSampleWorkers = 4;

/// Serial reference: workers executed one after another in index order.
SampleReport sample_plan_serial(const MaximalCouplingPlan& plan, const ProbMeasure& mu,
                                std::uint64_t n, std::uint64_t seed,
                                unsigned workers = kDefaultSampleWorkers);

/// OpenMP kernel over the same fixed worker decomposition; merged counts are
/// identical to the serial reference for any thread schedule.
SampleReport sample_plan(const MaximalCouplingPlan& plan, const ProbMeasure& mu, std::uint64_t n,
                         std::uint64_t seed, unsigned workers = kDefaultSampleWorkers);

}  // namespace evc
