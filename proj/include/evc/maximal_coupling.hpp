// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "evc/coupling.hpp"

namespace evc {

/// Two-stage maximal-coupling recipe for a pair (mu, nu): draw X from mu,
/// keep Y = X with the per-point stay probability, otherwise redraw Y from
/// the overflow measure. Stay probabilities are min(g/f, 1) on the quotient
/// densities; the overflow is the normalized (g - f)+ part of lambda.
struct MaximalCouplingPlan {
  SpacePtr space;
  Rational tv;
  bool degenerate;                     // tv == 0: Y = X always, overflow unused
  std::vector<Rational> stay_prob;     // per point, in [0, 1]
  std::optional<ProbMeasure> overflow; // engaged iff not degenerate
  std::vector<Rational> source_weights;      // the mu the plan was built from
  std::vector<Rational> target_class_mass;   // nu pushed to the quotient
};

MaximalCouplingPlan maximal_coupling_plan(const ProbMeasure& mu, const ProbMeasure& nu);

/// Exact joint law of (X, Y) under the plan, and its second marginal nu0.
/// nu0 agrees with nu on every saturated set; off-diagonal mass equals tv;
/// the law is a cost minimizer among couplings of (mu, nu0).
struct ExactLaw {
  Coupling joint;
  ProbMeasure nu0;
};

ExactLaw exact_coupling_law(const MaximalCouplingPlan& plan, const ProbMeasure& mu);

}  // namespace evc
