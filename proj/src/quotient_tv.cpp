// SPDX-License-Identifier: Apache-2.0
#include "evc/quotient_tv.hpp"

#include "evc/error.hpp"

namespace evc {

QuotientMeasure pushforward(const ProbMeasure& m) {
  const auto& space = m.space();
  QuotientMeasure out{space, std::vector<Rational>(space->class_count(), Rational(0))};
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    out.class_mass[space->class_of(p)] += m.weight(p);
  }
  return out;
}

TvWitness tv_invariant(const ProbMeasure& mu, const ProbMeasure& nu) {
  require_same_space(mu, nu);
  const auto& space = mu.space();
  auto mu_hat = pushforward(mu);
  auto nu_hat = pushforward(nu);

  std::size_t k = space->class_count();
  std::vector<Rational> lambda(k), f(k), g(k);
  std::vector<bool> witness_mask(k, false);
  Rational value(0);
  Rational abs_sum(0);
  for (std::size_t c = 0; c < k; ++c) {
    lambda[c] = mu_hat.class_mass[c] + nu_hat.class_mass[c];
    if (lambda[c].sign() > 0) {
      f[c] = mu_hat.class_mass[c] / lambda[c];
      g[c] = nu_hat.class_mass[c] / lambda[c];
    }
    // lambda-null classes keep f = g = 0 and stay out of the witness
    if (f[c] > g[c]) {
      witness_mask[c] = true;
      value += mu_hat.class_mass[c] - nu_hat.class_mass[c];
    }
    abs_sum += (mu_hat.class_mass[c] - nu_hat.class_mass[c]).abs();
  }
  if (!(abs_sum == value * Rational(2))) {
    fail(Errc::internal_inconsistency,
         "witness value " + value.to_string() + " disagrees with half L1 distance " +
             (abs_sum / Rational(2)).to_string());
  }
  return TvWitness{std::move(lambda), std::move(f), std::move(g),
                   SaturatedSet(space, std::move(witness_mask)), std::move(value)};
}

Rational tv_subsets(const ProbMeasure& mu, const ProbMeasure& nu) {
  require_same_space(mu, nu);
  Rational abs_sum(0);
  for (std::size_t p = 0; p < mu.space()->point_count(); ++p) {
    abs_sum += (mu.weight(p) - nu.weight(p)).abs();
  }
  return abs_sum / Rational(2);
}

std::vector<Rational> dual_envelope(const SpacePtr& space, const std::vector<Rational>& f_vals) {
  if (f_vals.size() != space->point_count()) {
    fail(Errc::internal_inconsistency, "value vector size does not match space");
  }
  for (std::size_t p = 0; p < f_vals.size(); ++p) {
    if (f_vals[p].sign() < 0 || f_vals[p] > Rational(1)) {
      fail(Errc::value_out_of_range, "value " + f_vals[p].to_string() + " at point '" +
                                         space->points()[p] + "' outside [0, 1]");
    }
  }
  std::vector<Rational> h(f_vals.size());
  for (std::size_t c = 0; c < space->class_count(); ++c) {
    const auto& members = space->class_members(c);
    Rational top = f_vals[members.front()];
    for (std::size_t m : members) top = Rational::max(top, f_vals[m]);
    for (std::size_t m : members) h[m] = top;
  }
  return h;
}

std::vector<bool> support_union(const ProbMeasure& mu, const ProbMeasure& nu) {
  require_same_space(mu, nu);
  std::vector<bool> mask(mu.space()->point_count(), false);
  for (std::size_t p = 0; p < mask.size(); ++p) {
    mask[p] = mu.weight(p).sign() > 0 || nu.weight(p).sign() > 0;
  }
  return mask;
}

RestrictionWitness tv_restricted(const ProbMeasure& mu, const ProbMeasure& nu,
                                 const std::vector<bool>& b_mask) {
  require_same_space(mu, nu);
  const auto& space = mu.space();
  if (b_mask.size() != space->point_count()) {
    fail(Errc::internal_inconsistency, "B mask size does not match space");
  }
  Rational mu_b = mu.mass_of_points(b_mask);
  Rational nu_b = nu.mass_of_points(b_mask);
  if (!(mu_b == Rational(1)) || !(nu_b == Rational(1))) {
    fail(Errc::mass_outside_b, "mu(B) = " + mu_b.to_string() + ", nu(B) = " + nu_b.to_string() +
                                   "; both must equal 1/1");
  }

  // Classes of the restricted relation: one group per class meeting B,
  // one singleton group per point outside B.
  std::vector<std::size_t> group_of(space->point_count());
  std::vector<std::size_t> group_of_class(space->class_count(), SIZE_MAX);
  std::size_t group_count = 0;
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    if (b_mask[p]) {
      std::size_t c = space->class_of(p);
      if (group_of_class[c] == SIZE_MAX) group_of_class[c] = group_count++;
      group_of[p] = group_of_class[c];
    } else {
      group_of[p] = group_count++;
    }
  }

  std::vector<Rational> mu_g(group_count, Rational(0)), nu_g(group_count, Rational(0));
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    mu_g[group_of[p]] += mu.weight(p);
    nu_g[group_of[p]] += nu.weight(p);
  }

  Rational value(0);
  std::vector<bool> winners(group_count, false);
  for (std::size_t gidx = 0; gidx < group_count; ++gidx) {
    if (mu_g[gidx] > nu_g[gidx]) {
      winners[gidx] = true;
      value += mu_g[gidx] - nu_g[gidx];
    }
  }
  std::vector<bool> witness_points(space->point_count(), false);
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    witness_points[p] = winners[group_of[p]];
  }

  // mu(B) = nu(B) = 1 forces B to contain both supports, so the restricted
  // value must coincide with the invariant-sigma-field value.
  Rational unrestricted = tv_invariant(mu, nu).value;
  if (!(value == unrestricted)) {
    fail(Errc::internal_inconsistency, "restricted value " + value.to_string() +
                                           " differs from invariant value " +
                                           unrestricted.to_string());
  }
  return RestrictionWitness{b_mask, std::move(value), std::move(witness_points)};
}

}  // namespace evc
