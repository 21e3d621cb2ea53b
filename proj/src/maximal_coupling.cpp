// SPDX-License-Identifier: Apache-2.0
#include "evc/maximal_coupling.hpp"

#include "evc/error.hpp"

namespace evc {

MaximalCouplingPlan maximal_coupling_plan(const ProbMeasure& mu, const ProbMeasure& nu) {
  require_same_space(mu, nu);
  const auto& space = mu.space();
  TvWitness w = tv_invariant(mu, nu);

  MaximalCouplingPlan plan;
  plan.space = space;
  plan.tv = w.value;
  plan.degenerate = w.value.is_zero();
  plan.source_weights = mu.weights();
  plan.target_class_mass = pushforward(nu).class_mass;

  plan.stay_prob.resize(space->point_count(), Rational(1));
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    std::size_t c = space->class_of(p);
    if (w.f[c].sign() > 0) {
      plan.stay_prob[p] = Rational::min(w.g[c] / w.f[c], Rational(1));
    }
    // f(C) = 0 keeps stay_prob = 1; such points carry no mu-mass
  }

  if (!plan.degenerate) {
    std::vector<Rational> gamma(space->point_count(), Rational(0));
    for (std::size_t p = 0; p < space->point_count(); ++p) {
      std::size_t c = space->class_of(p);
      if (w.g[c] > w.f[c]) {
        Rational lambda_point = mu.weight(p) + nu.weight(p);
        gamma[p] = (w.g[c] - w.f[c]) * lambda_point / plan.tv;
      }
    }
    // from_weights re-checks that gamma is a probability measure
    plan.overflow = ProbMeasure::from_weights(space, std::move(gamma));
  }

  Rational leave_mass(0);
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    leave_mass += mu.weight(p) * (Rational(1) - plan.stay_prob[p]);
  }
  if (!(leave_mass == plan.tv)) {
    fail(Errc::internal_inconsistency, "expected leave mass " + leave_mass.to_string() +
                                           " differs from tv " + plan.tv.to_string());
  }
  return plan;
}

ExactLaw exact_coupling_law(const MaximalCouplingPlan& plan, const ProbMeasure& mu) {
  if (!plan.space->equals(*mu.space()) || plan.source_weights != mu.weights()) {
    fail(Errc::plan_mismatch, "plan was built from a different source measure");
  }
  const auto& space = plan.space;
  std::size_t n = space->point_count();

  std::vector<Rational> nu0_weights(n, Rational(0));
  std::vector<std::pair<Coupling::Cell, Rational>> cells;
  for (std::size_t x = 0; x < n; ++x) {
    Rational stay_mass = mu.weight(x) * plan.stay_prob[x];
    if (!stay_mass.is_zero()) {
      cells.push_back({{x, x}, stay_mass});
      nu0_weights[x] += stay_mass;
    }
    Rational leave_mass = mu.weight(x) - stay_mass;
    if (!leave_mass.is_zero()) {
      if (!plan.overflow) {
        fail(Errc::internal_inconsistency, "degenerate plan carries leave mass");
      }
      const auto& gamma = *plan.overflow;
      for (std::size_t z = 0; z < n; ++z) {
        if (gamma.weight(z).is_zero()) continue;
        Rational w = leave_mass * gamma.weight(z);
        cells.push_back({{x, z}, w});
        nu0_weights[z] += w;
      }
    }
  }

  ProbMeasure nu0 = ProbMeasure::from_weights(space, std::move(nu0_weights));
  Coupling law(mu, nu0);
  for (const auto& [cell, w] : cells) law.add(cell.first, cell.second, w);

  // Exact guarantees of the construction, checked on every call.
  auto nu0_hat = pushforward(nu0);
  for (std::size_t c = 0; c < space->class_count(); ++c) {
    if (!(nu0_hat.class_mass[c] == plan.target_class_mass[c])) {
      fail(Errc::internal_inconsistency,
           "nu0 mass on class '" + space->class_ids()[c] + "' is " +
               nu0_hat.class_mass[c].to_string() + ", expected " +
               plan.target_class_mass[c].to_string());
    }
  }
  Rational off_diag(0), cross_class(0);
  for (const auto& [cell, w] : law.joint()) {
    if (cell.first != cell.second) off_diag += w;
    if (!space->same_class(cell.first, cell.second)) cross_class += w;
  }
  if (!(off_diag == plan.tv) || !(cross_class == plan.tv)) {
    fail(Errc::internal_inconsistency, "law mass off the diagonal (" + off_diag.to_string() +
                                           ") or off the relation (" + cross_class.to_string() +
                                           ") differs from tv " + plan.tv.to_string());
  }
  if (!validate_coupling(law).all_zero()) {
    fail(Errc::internal_inconsistency, "exact law is not a coupling of (mu, nu0)");
  }
  return ExactLaw{std::move(law), std::move(nu0)};
}

}  // namespace evc
