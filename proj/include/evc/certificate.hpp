// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "evc/transport_oracle.hpp"

namespace evc {

/// Optimality certificate for a coupling: a saturated set A with
/// P(same-class pairs) = 1 - P(A x A^c). Such an A exists exactly when the
/// coupling minimizes the cross-class mass among couplings of its marginals.
struct Certificate {
  SaturatedSet witness;      // A
  Rational relation_mass;    // P(E), serialized as "pE"
  Rational outflow_mass;     // P(A x A^c), serialized as "pAAc"
};

/// Tries the total-variation witness set first, then every union of classes
/// in canonical order (class count, then lexicographic). Couplings over more
/// than kMaxCertificateClasses classes are refused rather than subsampled.
inline constexpr std::size_t kMaxCertificateClasses = 20;

std::optional<Certificate> find_certificate(const Coupling& p);

struct MinimizerEvidence {
  bool is_minimizer;
  std::optional<Certificate> certificate;
  Rational cost;
  Rational oracle_value;
};

/// Certificate route and oracle route, compared; disagreement raises
/// InternalInconsistency.
MinimizerEvidence verify_minimizer(const Coupling& p);

}  // namespace evc
