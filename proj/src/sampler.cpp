// SPDX-License-Identifier: Apache-2.0
#include "evc/sampler.hpp"

#include <algorithm>

#include "evc/error.hpp"
#include "evc/prng.hpp"

namespace evc {

namespace {

// Inverse-cdf table over the nonzero entries of a measure.
struct Cdf {
  std::vector<double> cum;
  std::vector<std::size_t> point;

  static Cdf build(const std::vector<Rational>& weights) {
    Cdf out;
    double acc = 0.0;
    for (std::size_t p = 0; p < weights.size(); ++p) {
      if (weights[p].is_zero()) continue;
      acc += weights[p].to_double();
      out.cum.push_back(acc);
      out.point.push_back(p);
    }
    if (!out.cum.empty()) out.cum.back() = 1.0;  // close rounding gap at the top
    return out;
  }

  std::size_t draw(double u) const {
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    return point[static_cast<std::size_t>(it - cum.begin())];
  }
};

struct WorkerKernel {
  const Cdf* mu_cdf;
  const Cdf* gamma_cdf;  // null for degenerate plans
  const std::vector<double>* stay;
  std::size_t n_points;

  // Each trial consumes exactly three uniforms (X, U, Z) so the stream layout
  // does not depend on outcomes. Counts accumulate in a worker-local buffer.
  void run(std::uint64_t draws, std::uint64_t stream_seed,
           std::vector<std::uint64_t>& cell_counts) const {
    std::vector<std::uint64_t> local(n_points * n_points, 0);
    SplitMix64 rng(stream_seed);
    for (std::uint64_t i = 0; i < draws; ++i) {
      double ux = rng.uniform();
      double uu = rng.uniform();
      double uz = rng.uniform();
      std::size_t x = mu_cdf->draw(ux);
      std::size_t y = x;
      if (gamma_cdf != nullptr && uu > (*stay)[x]) y = gamma_cdf->draw(uz);
      ++local[x * n_points + y];
    }
    cell_counts = std::move(local);
  }
};

SampleReport run_sampler(const MaximalCouplingPlan& plan, const ProbMeasure& mu, std::uint64_t n,
                         std::uint64_t seed, unsigned workers, bool parallel) {
  if (!plan.space->equals(*mu.space()) || plan.source_weights != mu.weights()) {
    fail(Errc::plan_mismatch, "plan was built from a different source measure");
  }
  if (n == 0) fail(Errc::value_out_of_range, "sample count must be at least 1");
  if (workers == 0) fail(Errc::value_out_of_range, "worker count must be at least 1");

  const std::size_t n_points = plan.space->point_count();
  Cdf mu_cdf = Cdf::build(mu.weights());
  Cdf gamma_cdf;
  if (!plan.degenerate) gamma_cdf = Cdf::build(plan.overflow->weights());
  std::vector<double> stay(n_points);
  for (std::size_t p = 0; p < n_points; ++p) stay[p] = plan.stay_prob[p].to_double();

  WorkerKernel kernel{&mu_cdf, plan.degenerate ? nullptr : &gamma_cdf, &stay, n_points};

  std::vector<std::vector<std::uint64_t>> per_worker(workers);
  std::vector<std::uint64_t> draws(workers, n / workers);
  for (unsigned w = 0; w < n % workers; ++w) ++draws[w];

  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int w = 0; w < static_cast<int>(workers); ++w) {
      kernel.run(draws[w], split_stream_seed(seed, static_cast<std::uint64_t>(w)),
                 per_worker[w]);
    }
  } else {
    for (unsigned w = 0; w < workers; ++w) {
      kernel.run(draws[w], split_stream_seed(seed, w), per_worker[w]);
    }
  }

  SampleReport report;
  report.space = plan.space;
  report.n = n;
  report.seed = seed;
  report.workers = workers;
  std::vector<std::uint64_t> total(n_points * n_points, 0);
  for (unsigned w = 0; w < workers; ++w) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += per_worker[w][i];
  }
  std::uint64_t off_diag = 0, cross_class = 0;
  for (std::size_t x = 0; x < n_points; ++x) {
    for (std::size_t y = 0; y < n_points; ++y) {
      std::uint64_t c = total[x * n_points + y];
      if (c == 0) continue;
      report.counts[{x, y}] = c;
      if (x != y) off_diag += c;
      if (!plan.space->same_class(x, y)) cross_class += c;
    }
  }
  report.empirical_leave_rate = static_cast<double>(off_diag) / static_cast<double>(n);
  report.empirical_not_e_rate = static_cast<double>(cross_class) / static_cast<double>(n);
  return report;
}

}  // namespace

SampleReport sample_plan_serial(const MaximalCouplingPlan& plan, const ProbMeasure& mu,
                                std::uint64_t n, std::uint64_t seed, unsigned workers) {
  return run_sampler(plan, mu, n, seed, workers, false);
}

SampleReport sample_plan(const MaximalCouplingPlan& plan, const ProbMeasure& mu, std::uint64_t n,
                         std::uint64_t seed, unsigned workers) {
  return run_sampler(plan, mu, n, seed, workers, true);
}

}  // namespace evc
