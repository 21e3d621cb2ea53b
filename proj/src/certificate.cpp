// SPDX-License-Identifier: Apache-2.0
#include "evc/certificate.hpp"

#include "evc/error.hpp"

namespace evc {

namespace {

// Joint mass aggregated to class pairs; everything the search needs.
std::vector<std::vector<Rational>> class_flow(const Coupling& p) {
  const auto& space = p.space();
  std::size_t k = space->class_count();
  std::vector<std::vector<Rational>> q(k, std::vector<Rational>(k, Rational(0)));
  for (const auto& [cell, w] : p.joint()) {
    q[space->class_of(cell.first)][space->class_of(cell.second)] += w;
  }
  return q;
}

Rational outflow(const std::vector<std::vector<Rational>>& q, const std::vector<bool>& mask) {
  Rational total(0);
  for (std::size_t c1 = 0; c1 < q.size(); ++c1) {
    if (!mask[c1]) continue;
    for (std::size_t c2 = 0; c2 < q.size(); ++c2) {
      if (!mask[c2]) total += q[c1][c2];
    }
  }
  return total;
}

// Lexicographic successor of a strictly increasing index tuple over {0..k-1};
// false when combo was the last one.
bool next_combination(std::vector<std::size_t>& combo, std::size_t k) {
  std::size_t count = combo.size();
  for (std::size_t i = count; i-- > 0;) {
    if (combo[i] < k - count + i) {
      ++combo[i];
      for (std::size_t j = i + 1; j < count; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Enumerates subsets of {0..k-1} by size then lexicographic order, invoking
// visit(mask) until it returns true; reports whether it ever did.
template <typename Visit>
bool enumerate_subsets(std::size_t k, Visit&& visit) {
  std::vector<bool> mask(k, false);
  for (std::size_t count = 0; count <= k; ++count) {
    std::vector<std::size_t> combo(count);
    for (std::size_t i = 0; i < count; ++i) combo[i] = i;
    while (true) {
      std::fill(mask.begin(), mask.end(), false);
      for (std::size_t idx : combo) mask[idx] = true;
      if (visit(mask)) return true;
      if (!next_combination(combo, k)) break;
    }
  }
  return false;
}

}  // namespace

std::optional<Certificate> find_certificate(const Coupling& p) {
  if (!validate_coupling(p).all_zero()) {
    fail(Errc::invalid_coupling, "joint table does not have the intended marginals");
  }
  const auto& space = p.space();
  std::size_t k = space->class_count();
  if (k > kMaxCertificateClasses) {
    fail(Errc::too_many_classes,
         "exhaustive certificate search refused for " + std::to_string(k) + " classes");
  }

  auto q = class_flow(p);
  Rational relation_mass(0);
  for (std::size_t c = 0; c < k; ++c) relation_mass += q[c][c];
  Rational target = Rational(1) - relation_mass;

  // Fast path: the total-variation witness set certifies every coupling this
  // library constructs as optimal.
  SaturatedSet witness = tv_invariant(p.mu(), p.nu()).witness;
  if (outflow(q, witness.class_mask()) == target) {
    return Certificate{witness, relation_mass, target};
  }

  std::optional<Certificate> found;
  enumerate_subsets(k, [&](const std::vector<bool>& mask) {
    if (outflow(q, mask) == target) {
      found = Certificate{SaturatedSet(space, mask), relation_mass, target};
      return true;
    }
    return false;
  });
  return found;
}

MinimizerEvidence verify_minimizer(const Coupling& p) {
  Rational cost = coupling_cost(p);
  auto certificate = find_certificate(p);
  OracleResult oracle =
      solve_transport(TransportProblem{p.mu(), p.nu(), equivalence_cost(*p.space())});
  bool by_certificate = certificate.has_value();
  bool by_oracle = cost == oracle.value;
  if (by_certificate != by_oracle) {
    fail(Errc::internal_inconsistency,
         std::string("certificate route says ") + (by_certificate ? "optimal" : "not optimal") +
             " but oracle route says cost " + cost.to_string() + " vs optimum " +
             oracle.value.to_string());
  }
  return MinimizerEvidence{by_certificate, std::move(certificate), std::move(cost),
                           std::move(oracle.value)};
}

}  // namespace evc
