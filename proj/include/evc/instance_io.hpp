// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "evc/certificate.hpp"
#include "evc/sampler.hpp"

namespace evc {

/// One problem instance: a space plus the two marginals, as carried by the
/// shared instance JSON document
///   {"points": [...], "classes": {...}, "mu": {...}, "nu": {...}}.
struct Instance {
  SpacePtr space;
  ProbMeasure mu;
  ProbMeasure nu;
};

Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& instance);
Instance load_instance(const std::filesystem::path& path);

/// Couplings travel as a sparse list [{"x": point, "y": point, "w": "p/q"}].
Coupling parse_coupling_json(const std::string& text, const Instance& instance);
std::string coupling_to_json(const Coupling& coupling);
Coupling load_coupling(const std::filesystem::path& path, const Instance& instance);

/// Optional cost table for general-cost transport solves: a complete JSON
/// object {row point: {column point: "p/q", ...}, ...}.
TransportProblem parse_cost_table_json(const std::string& text, const Instance& instance);

std::string witness_to_json(const TvWitness& witness);
std::string certificate_to_json(const Certificate& certificate);
std::string sample_report_to_json(const SampleReport& report);

/// Fixed float rendering for reports: 17 significant digits.
std::string format_double(double value);

enum class Weighting { counts, uniform };

/// CSV with header point_id,class_label,mu_count,nu_count; duplicate
/// point_id rows accumulate counts.
Instance ingest_csv(const std::string& csv_text, Weighting weighting);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace evc
