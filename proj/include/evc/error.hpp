// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace evc {

enum class Errc {
  duplicate_point,
  missing_label,
  negative_weight,
  mass_not_one,
  unknown_point,
  missing_weight,
  space_mismatch,
  value_out_of_range,
  mass_outside_b,
  invalid_coupling,
  plan_mismatch,
  infeasible_marginals,
  too_many_classes,
  internal_inconsistency,
  parse_error,
  io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace evc
