// SPDX-License-Identifier: Apache-2.0
#include "evc/measure.hpp"

#include "evc/error.hpp"

namespace evc {

ProbMeasure ProbMeasure::create(SpacePtr space,
                                const std::map<std::string, std::string>& weight_strings) {
  for (const auto& [point, text] : weight_strings) {
    if (!space->find_point(point)) {
      fail(Errc::unknown_point, "weight given for unknown point '" + point + "'");
    }
    (void)text;
  }
  std::vector<Rational> weights(space->point_count());
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    auto it = weight_strings.find(space->points()[p]);
    if (it == weight_strings.end()) {
      fail(Errc::missing_weight, "no weight for point '" + space->points()[p] + "'");
    }
    weights[p] = Rational::parse(it->second);
  }
  return from_weights(std::move(space), std::move(weights));
}

ProbMeasure ProbMeasure::from_weights(SpacePtr space, std::vector<Rational> weights) {
  if (weights.size() != space->point_count()) {
    fail(Errc::internal_inconsistency, "weight vector size does not match space");
  }
  Rational total(0);
  for (std::size_t p = 0; p < weights.size(); ++p) {
    if (weights[p].sign() < 0) {
      fail(Errc::negative_weight, "negative weight " + weights[p].to_string() + " at point '" +
                                      space->points()[p] + "'");
    }
    total += weights[p];
  }
  if (!(total == Rational(1))) {
    Rational off = Rational(1) - total;
    fail(Errc::mass_not_one,
         "weights sum to " + total.to_string() + ", off from 1 by " + off.abs().to_string());
  }
  return ProbMeasure(std::move(space), std::move(weights));
}

Rational ProbMeasure::mass_of_points(const std::vector<bool>& point_mask) const {
  Rational total(0);
  for (std::size_t p = 0; p < weights_.size(); ++p) {
    if (point_mask[p]) total += weights_[p];
  }
  return total;
}

Rational ProbMeasure::mass_of(const SaturatedSet& set) const {
  Rational total(0);
  for (std::size_t p = 0; p < weights_.size(); ++p) {
    if (set.contains_point(p)) total += weights_[p];
  }
  return total;
}

Rational ProbMeasure::expectation(const std::vector<Rational>& values) const {
  Rational total(0);
  for (std::size_t p = 0; p < weights_.size(); ++p) total += weights_[p] * values[p];
  return total;
}

bool operator==(const ProbMeasure& a, const ProbMeasure& b) {
  return a.space_->equals(*b.space_) && a.weights_ == b.weights_;
}

void require_same_space(const ProbMeasure& a, const ProbMeasure& b) {
  if (!a.space()->equals(*b.space())) {
    fail(Errc::space_mismatch, "measures live on different spaces");
  }
}

}  // namespace evc
