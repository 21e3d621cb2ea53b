// SPDX-License-Identifier: Apache-2.0
#include "evc/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evc/error.hpp"

namespace evc {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json_or_fail(const std::string& text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail(Errc::parse_error, "invalid JSON document");
  return j;
}

std::map<std::string, std::string> string_map(const Json& j, const std::string& what) {
  if (!j.is_object()) fail(Errc::parse_error, "'" + what + "' must be a JSON object");
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) {
      fail(Errc::parse_error, "'" + what + "." + key + "' must be a string");
    }
    out[key] = value.get<std::string>();
  }
  return out;
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  Json j = parse_json_or_fail(text);
  if (!j.is_object()) fail(Errc::parse_error, "instance document must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "points" && key != "classes" && key != "mu" && key != "nu") {
      fail(Errc::parse_error, "unknown instance key '" + key + "'");
    }
  }
  for (const char* key : {"points", "classes", "mu", "nu"}) {
    if (!j.contains(key)) fail(Errc::parse_error, std::string("missing instance key '") + key + "'");
  }
  if (!j["points"].is_array()) fail(Errc::parse_error, "'points' must be a JSON array");
  std::vector<std::string> points;
  for (const auto& p : j["points"]) {
    if (!p.is_string()) fail(Errc::parse_error, "'points' entries must be strings");
    points.push_back(p.get<std::string>());
  }
  SpacePtr space = EquivalenceSpace::create(std::move(points), string_map(j["classes"], "classes"));
  ProbMeasure mu = ProbMeasure::create(space, string_map(j["mu"], "mu"));
  ProbMeasure nu = ProbMeasure::create(space, string_map(j["nu"], "nu"));
  return Instance{space, std::move(mu), std::move(nu)};
}

std::string instance_to_json(const Instance& instance) {
  const auto& space = instance.space;
  Json j;
  j["points"] = Json::array();
  for (const auto& p : space->points()) j["points"].push_back(p);
  j["classes"] = Json::object();
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    j["classes"][space->points()[p]] = space->class_id_of(p);
  }
  j["mu"] = Json::object();
  j["nu"] = Json::object();
  for (std::size_t p = 0; p < space->point_count(); ++p) {
    j["mu"][space->points()[p]] = instance.mu.weight(p).to_string();
    j["nu"][space->points()[p]] = instance.nu.weight(p).to_string();
  }
  return j.dump(2) + "\n";
}

Instance load_instance(const std::filesystem::path& path) {
  return parse_instance_json(read_file(path));
}

Coupling parse_coupling_json(const std::string& text, const Instance& instance) {
  Json j = parse_json_or_fail(text);
  // Either the bare sparse list or the `couple` command's {"cost", "joint"}
  // wrapper, so constructed couplings feed straight back into certify.
  if (j.is_object() && j.contains("joint")) j = j["joint"];
  if (!j.is_array()) fail(Errc::parse_error, "coupling document must be a JSON array");
  Coupling out(instance.mu, instance.nu);
  std::set<Coupling::Cell> seen;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("x") || !entry.contains("y") ||
        !entry.contains("w") || entry.size() != 3) {
      fail(Errc::parse_error, "coupling entries must be {\"x\", \"y\", \"w\"} objects");
    }
    if (!entry["x"].is_string() || !entry["y"].is_string() || !entry["w"].is_string()) {
      fail(Errc::parse_error, "coupling entry fields must be strings");
    }
    std::size_t x = instance.space->point_index(entry["x"].get<std::string>());
    std::size_t y = instance.space->point_index(entry["y"].get<std::string>());
    if (!seen.insert({x, y}).second) {
      fail(Errc::parse_error, "duplicate coupling cell (" + entry["x"].get<std::string>() + ", " +
                                  entry["y"].get<std::string>() + ")");
    }
    Rational w = Rational::parse(entry["w"].get<std::string>());
    if (w.sign() < 0) fail(Errc::negative_weight, "negative coupling weight " + w.to_string());
    out.add(x, y, w);
  }
  return out;
}

std::string coupling_to_json(const Coupling& coupling) {
  const auto& space = coupling.space();
  Json j = Json::array();
  for (const auto& [cell, w] : coupling.joint()) {
    Json entry;
    entry["x"] = space->points()[cell.first];
    entry["y"] = space->points()[cell.second];
    entry["w"] = w.to_string();
    j.push_back(entry);
  }
  return j.dump(2) + "\n";
}

Coupling load_coupling(const std::filesystem::path& path, const Instance& instance) {
  return parse_coupling_json(read_file(path), instance);
}

TransportProblem parse_cost_table_json(const std::string& text, const Instance& instance) {
  Json j = parse_json_or_fail(text);
  if (!j.is_object()) fail(Errc::parse_error, "cost table must be a JSON object");
  const auto& space = instance.space;
  std::size_t n = space->point_count();
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  std::vector<std::vector<Rational>> cost(n, std::vector<Rational>(n));
  for (const auto& [row_key, row_value] : j.items()) {
    std::size_t x = space->point_index(row_key);
    if (!row_value.is_object()) {
      fail(Errc::parse_error, "cost row '" + row_key + "' must be a JSON object");
    }
    for (const auto& [col_key, cell] : row_value.items()) {
      std::size_t y = space->point_index(col_key);
      if (!cell.is_string()) {
        fail(Errc::parse_error, "cost entries must be rational strings");
      }
      seen[x][y] = true;
      cost[x][y] = Rational::parse(cell.get<std::string>());
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!seen[x][y]) {
        fail(Errc::parse_error, "cost table is missing the pair (" + space->points()[x] + ", " +
                                    space->points()[y] + ")");
      }
    }
  }
  return TransportProblem{instance.mu, instance.nu, std::move(cost)};
}

std::string witness_to_json(const TvWitness& witness) {
  const auto& space = witness.witness.space();
  Json j;
  j["value"] = witness.value.to_string();
  j["A"] = Json::array();
  for (const auto& c : witness.witness.member_classes()) j["A"].push_back(c);
  j["f"] = Json::object();
  j["g"] = Json::object();
  for (std::size_t c = 0; c < space->class_count(); ++c) {
    j["f"][space->class_ids()[c]] = witness.f[c].to_string();
    j["g"][space->class_ids()[c]] = witness.g[c].to_string();
  }
  return j.dump(2) + "\n";
}

std::string certificate_to_json(const Certificate& certificate) {
  Json j;
  j["A"] = Json::array();
  for (const auto& c : certificate.witness.member_classes()) j["A"].push_back(c);
  j["pE"] = certificate.relation_mass.to_string();
  j["pAAc"] = certificate.outflow_mass.to_string();
  return j.dump(2) + "\n";
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string sample_report_to_json(const SampleReport& report) {
  // Hand-rolled so the float fields keep the fixed 17-significant-digit form.
  std::ostringstream out;
  out << "{\n";
  out << "  \"n\": " << report.n << ",\n";
  out << "  \"seed\": " << report.seed << ",\n";
  out << "  \"workers\": " << report.workers << ",\n";
  out << "  \"counts\": [\n";
  std::size_t i = 0;
  for (const auto& [cell, count] : report.counts) {
    out << "    {\"x\": \"" << report.space->points()[cell.first] << "\", \"y\": \""
        << report.space->points()[cell.second] << "\", \"c\": " << count << "}";
    if (++i < report.counts.size()) out << ",";
    out << "\n";
  }
  out << "  ],\n";
  out << "  \"empirical_leave_rate\": " << format_double(report.empirical_leave_rate) << ",\n";
  out << "  \"empirical_not_E_rate\": " << format_double(report.empirical_not_e_rate) << "\n";
  out << "}\n";
  return out.str();
}

Instance ingest_csv(const std::string& csv_text, Weighting weighting) {
  std::istringstream in(csv_text);
  std::string line;

  auto split = [](const std::string& row) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream fs(row);
    while (std::getline(fs, field, ',')) {
      std::size_t b = field.find_first_not_of(" \t\r");
      std::size_t e = field.find_last_not_of(" \t\r");
      fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!row.empty() && row.back() == ',') fields.push_back("");
    return fields;
  };

  if (!std::getline(in, line)) fail(Errc::parse_error, "empty CSV input");
  auto header = split(line);
  const std::vector<std::string> expected = {"point_id", "class_label", "mu_count", "nu_count"};
  if (header != expected) {
    fail(Errc::parse_error, "CSV header must be point_id,class_label,mu_count,nu_count");
  }

  auto parse_count = [](const std::string& s, std::size_t lineno) -> std::uint64_t {
    if (s.empty()) fail(Errc::parse_error, "empty count on line " + std::to_string(lineno));
    std::uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') {
        fail(Errc::parse_error, "bad count '" + s + "' on line " + std::to_string(lineno));
      }
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  };

  std::vector<std::string> points;
  std::map<std::string, std::string> labels;
  std::map<std::string, std::uint64_t> mu_counts, nu_counts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split(line);
    if (fields.size() != 4 || fields[0].empty() || fields[1].empty()) {
      fail(Errc::parse_error, "malformed CSV row on line " + std::to_string(lineno));
    }
    const std::string& point = fields[0];
    const std::string& label = fields[1];
    auto [it, inserted] = labels.emplace(point, label);
    if (inserted) {
      points.push_back(point);
      mu_counts[point] = 0;
      nu_counts[point] = 0;
    } else if (it->second != label) {
      fail(Errc::parse_error, "point '" + point + "' re-labeled on line " + std::to_string(lineno));
    }
    mu_counts[point] += parse_count(fields[2], lineno);
    nu_counts[point] += parse_count(fields[3], lineno);
  }
  if (points.empty()) fail(Errc::parse_error, "CSV has no data rows");

  SpacePtr space = EquivalenceSpace::create(points, labels);
  std::vector<Rational> mu_weights(points.size()), nu_weights(points.size());
  if (weighting == Weighting::uniform) {
    Rational each(1, static_cast<std::int64_t>(points.size()));
    for (std::size_t p = 0; p < points.size(); ++p) mu_weights[p] = nu_weights[p] = each;
  } else {
    std::uint64_t mu_total = 0, nu_total = 0;
    for (const auto& p : points) {
      mu_total += mu_counts[p];
      nu_total += nu_counts[p];
    }
    if (mu_total == 0 || nu_total == 0) {
      fail(Errc::parse_error, "zero total count for mu or nu");
    }
    for (std::size_t p = 0; p < points.size(); ++p) {
      mu_weights[p] = Rational(static_cast<std::int64_t>(mu_counts[points[p]]),
                               static_cast<std::int64_t>(mu_total));
      nu_weights[p] = Rational(static_cast<std::int64_t>(nu_counts[points[p]]),
                               static_cast<std::int64_t>(nu_total));
    }
  }
  return Instance{space, ProbMeasure::from_weights(space, std::move(mu_weights)),
                  ProbMeasure::from_weights(space, std::move(nu_weights))};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open '" + path.string() + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) fail(Errc::io_error, "failed writing '" + path.string() + "'");
}

}  // namespace evc
