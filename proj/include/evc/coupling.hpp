// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <utility>

#include "evc/measure.hpp"
#include "evc/quotient_tv.hpp"

namespace evc {

/// Sparse joint distribution over point pairs with intended marginals
/// (mu, nu). Entries are nonnegative exact rationals; absent means zero.
class Coupling {
 public:
  using Cell = std::pair<std::size_t, std::size_t>;

  Coupling(ProbMeasure mu, ProbMeasure nu);

  void add(std::size_t x, std::size_t y, const Rational& w);

  const std::map<Cell, Rational>& joint() const { return joint_; }
  Rational at(std::size_t x, std::size_t y) const;
  Rational total_mass() const;

  const ProbMeasure& mu() const { return mu_; }
  const ProbMeasure& nu() const { return nu_; }
  const SpacePtr& space() const { return mu_.space(); }

  /// Joint mass on same-class pairs.
  Rational relation_mass() const;
  /// Joint mass flowing from A to its complement.
  Rational flow_out_of(const SaturatedSet& a) const;

 private:
  ProbMeasure mu_;
  ProbMeasure nu_;
  std::map<Cell, Rational> joint_;
};

/// Exact marginal residuals: row sums minus mu, column sums minus nu.
struct MarginalReport {
  std::vector<Rational> row_residual;
  std::vector<Rational> col_residual;
  bool all_zero() const;
};

MarginalReport validate_coupling(const Coupling& p);

/// 1 minus the same-class joint mass; throws InvalidCoupling when the
/// marginals do not match exactly.
Rational coupling_cost(const Coupling& p);

/// Coupling attaining the invariant total variation: per class, mass
/// min(mu_hat, nu_hat) matched inside the class by northwest-corner order,
/// the cross-class excess matched greedily in point order.
Coupling optimal_coupling(const ProbMeasure& mu, const ProbMeasure& nu);

}  // namespace evc
