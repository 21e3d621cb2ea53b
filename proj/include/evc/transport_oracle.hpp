// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "evc/coupling.hpp"

namespace evc {

/// Dense transport instance: nonnegative rational cost per point pair.
struct TransportProblem {
  ProbMeasure mu;
  ProbMeasure nu;
  std::vector<std::vector<Rational>> cost;
};

/// c(x, y) = 0 for same-class pairs, 1 otherwise.
std::vector<std::vector<Rational>> equivalence_cost(const EquivalenceSpace& space);

struct OracleResult {
  Rational value;
  Coupling argmin;
  std::size_t iterations;  // augmenting paths
};

/// Exact min-cost transport by successive shortest paths over the bipartite
/// flow network, entirely in rational arithmetic. Deliberately independent of
/// the quotient and coupling constructions it referees.
OracleResult solve_transport(const TransportProblem& problem);

struct DualityReport {
  Rational oracle_value;
  Rational invariant_value;
  Rational gap;  // oracle - invariant; any nonzero value is a hard failure
  bool ok;
};

DualityReport duality_check(const ProbMeasure& mu, const ProbMeasure& nu);

}  // namespace evc
