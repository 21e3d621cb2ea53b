// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "evc/rational.hpp"
#include "evc/space.hpp"

namespace evc {

/// Probability measure with exact rational point weights summing to 1.
/// Immutable after construction.
class ProbMeasure {
 public:
  /// Weight strings are decimal or "p/q"; every point of the space must
  /// appear exactly once.
  static ProbMeasure create(SpacePtr space,
                            const std::map<std::string, std::string>& weight_strings);
  static ProbMeasure from_weights(SpacePtr space, std::vector<Rational> weights);

  const SpacePtr& space() const { return space_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t p) const { return weights_[p]; }

  Rational mass_of_points(const std::vector<bool>& point_mask) const;
  Rational mass_of(const SaturatedSet& set) const;
  /// Integral of a point function: sum of weight(x) * values[x].
  Rational expectation(const std::vector<Rational>& values) const;

  friend bool operator==(const ProbMeasure& a, const ProbMeasure& b);

 private:
  ProbMeasure(SpacePtr space, std::vector<Rational> weights)
      : space_(std::move(space)), weights_(std::move(weights)) {}

  SpacePtr space_;
  std::vector<Rational> weights_;
};

void require_same_space(const ProbMeasure& a, const ProbMeasure& b);

}  // namespace evc
