// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "evc/measure.hpp"

namespace evc {

/// Measure pushed forward to the class partition: one mass per class.
struct QuotientMeasure {
  SpacePtr space;
  std::vector<Rational> class_mass;  // class order
};

QuotientMeasure pushforward(const ProbMeasure& m);

/// Densities of mu and nu relative to lambda = mu + nu on the quotient,
/// the strict witness set A = {f > g}, and the attained total variation
/// over the invariant sigma-field.
struct TvWitness {
  std::vector<Rational> lambda_mass;  // per class
  std::vector<Rational> f;            // per class, mu-density
  std::vector<Rational> g;            // per class, nu-density
  SaturatedSet witness;               // A = {f > g}
  Rational value;                     // mu(A) - nu(A)
};

TvWitness tv_invariant(const ProbMeasure& mu, const ProbMeasure& nu);

/// Total variation over the full power set: half the L1 distance of weights.
Rational tv_subsets(const ProbMeasure& mu, const ProbMeasure& nu);

/// h(x) = max of f over the class of x. Values must lie in [0, 1].
std::vector<Rational> dual_envelope(const SpacePtr& space, const std::vector<Rational>& f_vals);

/// B = {x : mu(x) > 0 or nu(x) > 0}, as a point mask.
std::vector<bool> support_union(const ProbMeasure& mu, const ProbMeasure& nu);

/// Total variation over the sigma-field of sets invariant under the relation
/// restricted to B; points outside B count as zero-mass singleton classes.
struct RestrictionWitness {
  std::vector<bool> b_mask;
  Rational value;
  std::vector<bool> witness_points;
};

RestrictionWitness tv_restricted(const ProbMeasure& mu, const ProbMeasure& nu,
                                 const std::vector<bool>& b_mask);

}  // namespace evc
