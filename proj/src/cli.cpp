// SPDX-License-Identifier: Apache-2.0
#include "evc/cli.hpp"

#include <ostream>
#include <sstream>

#include <json.hpp>

#include "evc/error.hpp"
#include "evc/selftest.hpp"

namespace evc {

namespace {

using Json = nlohmann::ordered_json;

bool json_format(const RunConfig& config) { return config.format == RunConfig::Format::json; }

void emit(const RunConfig& config, std::ostream& out, const std::string& payload) {
  if (config.output_path.empty()) {
    out << payload;
  } else {
    write_file(config.output_path, payload);
  }
}

std::string witness_text(const TvWitness& witness) {
  const auto& space = witness.witness.space();
  std::ostringstream out;
  out << "value " << witness.value.to_string() << "\n";
  out << "A";
  for (const auto& c : witness.witness.member_classes()) out << " " << c;
  out << "\n";
  for (std::size_t c = 0; c < space->class_count(); ++c) {
    out << "f " << space->class_ids()[c] << " " << witness.f[c].to_string() << "\n";
  }
  for (std::size_t c = 0; c < space->class_count(); ++c) {
    out << "g " << space->class_ids()[c] << " " << witness.g[c].to_string() << "\n";
  }
  return out.str();
}

std::string coupling_text(const Coupling& coupling) {
  const auto& space = coupling.space();
  std::ostringstream out;
  for (const auto& [cell, w] : coupling.joint()) {
    out << space->points()[cell.first] << " " << space->points()[cell.second] << " "
        << w.to_string() << "\n";
  }
  return out.str();
}

int cmd_tv(const RunConfig& config, std::ostream& out) {
  Instance inst = load_instance(config.instance_path);
  TvWitness witness = tv_invariant(inst.mu, inst.nu);
  emit(config, out, json_format(config) ? witness_to_json(witness) : witness_text(witness));
  return 0;
}

int cmd_couple(const RunConfig& config, std::ostream& out) {
  Instance inst = load_instance(config.instance_path);
  Coupling p = optimal_coupling(inst.mu, inst.nu);
  Rational cost = coupling_cost(p);
  if (json_format(config)) {
    Json j;
    j["cost"] = cost.to_string();
    j["joint"] = Json::parse(coupling_to_json(p));
    emit(config, out, j.dump(2) + "\n");
  } else {
    emit(config, out, "cost " + cost.to_string() + "\n" + coupling_text(p));
  }
  return 0;
}

int cmd_kl8(const RunConfig& config, std::ostream& out) {
  Instance inst = load_instance(config.instance_path);
  MaximalCouplingPlan plan = maximal_coupling_plan(inst.mu, inst.nu);
  ExactLaw law = exact_coupling_law(plan, inst.mu);
  const auto& space = inst.space;
  if (json_format(config)) {
    Json j;
    j["tv"] = plan.tv.to_string();
    j["degenerate"] = plan.degenerate;
    j["stay_prob"] = Json::object();
    for (std::size_t p = 0; p < space->point_count(); ++p) {
      j["stay_prob"][space->points()[p]] = plan.stay_prob[p].to_string();
    }
    j["overflow"] = Json::object();
    for (std::size_t p = 0; p < space->point_count(); ++p) {
      Rational g = plan.degenerate ? Rational(0) : plan.overflow->weight(p);
      j["overflow"][space->points()[p]] = g.to_string();
    }
    j["joint"] = Json::parse(coupling_to_json(law.joint));
    j["nu0"] = Json::object();
    for (std::size_t p = 0; p < space->point_count(); ++p) {
      j["nu0"][space->points()[p]] = law.nu0.weight(p).to_string();
    }
    emit(config, out, j.dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << "tv " << plan.tv.to_string() << "\n";
    text << "degenerate " << (plan.degenerate ? "true" : "false") << "\n";
    for (std::size_t p = 0; p < space->point_count(); ++p) {
      text << "stay " << space->points()[p] << " " << plan.stay_prob[p].to_string() << "\n";
    }
    for (std::size_t p = 0; p < space->point_count(); ++p) {
      Rational g = plan.degenerate ? Rational(0) : plan.overflow->weight(p);
      text << "overflow " << space->points()[p] << " " << g.to_string() << "\n";
    }
    text << "joint\n" << coupling_text(law.joint);
    for (std::size_t p = 0; p < space->point_count(); ++p) {
      text << "nu0 " << space->points()[p] << " " << law.nu0.weight(p).to_string() << "\n";
    }
    emit(config, out, text.str());
  }
  return 0;
}

int cmd_sample(const RunConfig& config, std::ostream& out) {
  Instance inst = load_instance(config.instance_path);
  MaximalCouplingPlan plan = maximal_coupling_plan(inst.mu, inst.nu);
  SampleReport report = sample_plan(plan, inst.mu, config.samples, config.seed, config.workers);
  if (json_format(config)) {
    emit(config, out, sample_report_to_json(report));
  } else {
    std::ostringstream text;
    text << "n " << report.n << "\n";
    text << "seed " << report.seed << "\n";
    text << "workers " << report.workers << "\n";
    for (const auto& [cell, count] : report.counts) {
      text << "count " << inst.space->points()[cell.first] << " "
           << inst.space->points()[cell.second] << " " << count << "\n";
    }
    text << "empirical_leave_rate " << format_double(report.empirical_leave_rate) << "\n";
    text << "empirical_not_E_rate " << format_double(report.empirical_not_e_rate) << "\n";
    emit(config, out, text.str());
  }
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  Instance inst = load_instance(config.instance_path);
  DualityReport report = duality_check(inst.mu, inst.nu);
  if (json_format(config)) {
    Json j;
    j["oracle_value"] = report.oracle_value.to_string();
    j["tv_invariant"] = report.invariant_value.to_string();
    j["gap"] = report.gap.to_string();
    j["ok"] = report.ok;
    emit(config, out, j.dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << "oracle " << report.oracle_value.to_string() << "\n";
    text << "tv_invariant " << report.invariant_value.to_string() << "\n";
    text << "gap " << report.gap.to_string() << "\n";
    text << "ok " << (report.ok ? "true" : "false") << "\n";
    emit(config, out, text.str());
  }
  return report.ok ? 0 : 1;
}

int cmd_certify(const RunConfig& config, std::ostream& out) {
  Instance inst = load_instance(config.instance_path);
  Coupling p = load_coupling(config.coupling_path, inst);
  auto certificate = find_certificate(p);
  if (json_format(config)) {
    if (certificate) {
      emit(config, out, certificate_to_json(*certificate));
    } else {
      Json j;
      j["certified"] = false;
      emit(config, out, j.dump(2) + "\n");
    }
  } else {
    if (certificate) {
      std::ostringstream text;
      text << "certified true\n";
      text << "A";
      for (const auto& c : certificate->witness.member_classes()) text << " " << c;
      text << "\n";
      text << "pE " << certificate->relation_mass.to_string() << "\n";
      text << "pAAc " << certificate->outflow_mass.to_string() << "\n";
      emit(config, out, text.str());
    } else {
      emit(config, out, "certified false\n");
    }
  }
  return certificate ? 0 : 1;
}

int cmd_ingest(const RunConfig& config, std::ostream& out) {
  Instance inst = ingest_csv(read_file(config.csv_path), config.weighting);
  emit(config, out, instance_to_json(inst));
  return 0;
}

int cmd_selftest(const RunConfig& config, std::ostream& out) {
  if (!config.output_path.empty()) {
    std::ostringstream buffer;
    bool ok = selftest::print_acceptance(buffer);
    write_file(config.output_path, buffer.str());
    return ok ? 0 : 1;
  }
  return selftest::print_acceptance(out) ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::tv: return cmd_tv(config, out);
      case Command::couple: return cmd_couple(config, out);
      case Command::kl8: return cmd_kl8(config, out);
      case Command::sample: return cmd_sample(config, out);
      case Command::verify: return cmd_verify(config, out);
      case Command::certify: return cmd_certify(config, out);
      case Command::ingest: return cmd_ingest(config, out);
      case Command::selftest: return cmd_selftest(config, out);
    }
    err << "error: unknown command\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::internal_inconsistency ? 3 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace evc
