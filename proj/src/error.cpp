// SPDX-License-Identifier: Apache-2.0
#include "evc/error.hpp"

namespace evc {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::duplicate_point: return "DuplicatePoint";
    case Errc::missing_label: return "MissingLabel";
    case Errc::negative_weight: return "NegativeWeight";
    case Errc::mass_not_one: return "MassNotOne";
    case Errc::unknown_point: return "UnknownPoint";
    case Errc::missing_weight: return "MissingWeight";
    case Errc::space_mismatch: return "SpaceMismatch";
    case Errc::value_out_of_range: return "ValueOutOfRange";
    case Errc::mass_outside_b: return "MassOutsideB";
    case Errc::invalid_coupling: return "InvalidCoupling";
    case Errc::plan_mismatch: return "PlanMismatch";
    case Errc::infeasible_marginals: return "InfeasibleMarginals";
    case Errc::too_many_classes: return "TooManyClasses";
    case Errc::internal_inconsistency: return "InternalInconsistency";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace evc
