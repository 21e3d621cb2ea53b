// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "evc/instance_io.hpp"
#include "evc/sampler.hpp"

namespace evc {

enum class Command { tv, couple, kl8, sample, verify, certify, ingest, selftest };

struct RunConfig {
  Command command = Command::tv;
  std::string instance_path;
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  std::string output_path;  // empty: stdout
  enum class Format { json, text } format = Format::text;
  unsigned workers = kDefaultSampleWorkers;
  std::string coupling_path;  // certify
  std::string csv_path;       // ingest
  Weighting weighting = Weighting::counts;
};

/// Exit codes: 0 success, 1 verification failure, 2 input error,
/// 3 internal inconsistency.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace evc
