// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

#include "evc/instance_io.hpp"

namespace evc::selftest {

/// The embedded 4-point demonstration instance: two classes {a,b} and {c,d},
/// mu = (1/2, 0, 1/2, 0), nu = (0, 1/5, 0, 4/5); invariant TV is 3/10.
Instance running_instance();

/// Pseudo-random desk-scale instance: at most 12 points, at most 6 classes,
/// weight denominators at most 100. Deterministic in (master_seed, index).
Instance random_instance(std::uint64_t master_seed, std::uint64_t index);

/// Same space with every point in its own class (the identity relation).
Instance identity_relabel(const Instance& instance);

/// Strictly suboptimal couplings built from an optimal one by feasible mass
/// rotations that raise the cross-class cost; at most `want` of them.
std::vector<Coupling> perturbed_couplings(const Coupling& optimal, std::size_t want);

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

std::vector<CriterionResult> run_acceptance();

/// One PASS/FAIL line per criterion; returns true when all pass.
bool print_acceptance(std::ostream& out);

}  // namespace evc::selftest
