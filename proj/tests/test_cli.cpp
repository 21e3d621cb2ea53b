// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evc/cli.hpp"
#include "evc/selftest.hpp"

using namespace evc;
namespace fs = std::filesystem;

namespace {

const char* kRunningInstance = R"({
  "points": ["a", "b", "c", "d"],
  "classes": {"a": "C1", "b": "C1", "c": "C2", "d": "C2"},
  "mu": {"a": "0.5", "b": "0", "c": "0.5", "d": "0"},
  "nu": {"a": "0", "b": "0.2", "c": "0", "d": "0.8"}
})";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("evc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path file(const std::string& name, const std::string& contents) const {
    fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << contents;
    return p;
  }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult invoke(RunConfig config) {
  std::ostringstream out, err;
  int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("tv command prints the witness") {
  TempDir dir;
  RunConfig config;
  config.command = Command::tv;
  config.instance_path = dir.file("inst.json", kRunningInstance).string();

  RunResult text = invoke(config);
  CHECK(text.code == 0);
  CHECK(text.out.find("value 3/10") != std::string::npos);
  CHECK(text.out.find("A C1") != std::string::npos);

  config.format = RunConfig::Format::json;
  RunResult json = invoke(config);
  CHECK(json.code == 0);
  auto parsed = nlohmann::json::parse(json.out);
  CHECK(parsed["value"] == "3/10");
  CHECK(parsed["A"] == nlohmann::json::array({"C1"}));
  CHECK(parsed["f"]["C1"] == "5/7");
  CHECK(parsed["g"]["C2"] == "8/13");
}

TEST_CASE("couple and kl8 commands emit exact tables") {
  TempDir dir;
  RunConfig config;
  config.command = Command::couple;
  config.instance_path = dir.file("inst.json", kRunningInstance).string();
  config.format = RunConfig::Format::json;

  RunResult couple = invoke(config);
  CHECK(couple.code == 0);
  auto coupled = nlohmann::json::parse(couple.out);
  CHECK(coupled["cost"] == "3/10");
  CHECK(coupled["joint"].size() == 3);

  config.command = Command::kl8;
  RunResult plan = invoke(config);
  CHECK(plan.code == 0);
  auto planned = nlohmann::json::parse(plan.out);
  CHECK(planned["tv"] == "3/10");
  CHECK(planned["degenerate"] == false);
  CHECK(planned["stay_prob"]["a"] == "2/5");
  CHECK(planned["overflow"]["c"] == "5/13");
  CHECK(planned["nu0"]["d"] == "12/65");
}

TEST_CASE("verify exits 0 with zero gap") {
  TempDir dir;
  RunConfig config;
  config.command = Command::verify;
  config.instance_path = dir.file("inst.json", kRunningInstance).string();
  RunResult result = invoke(config);
  CHECK(result.code == 0);
  CHECK(result.out.find("oracle 3/10") != std::string::npos);
  CHECK(result.out.find("tv_invariant 3/10") != std::string::npos);
  CHECK(result.out.find("gap 0/1") != std::string::npos);
}

TEST_CASE("certify distinguishes optimal from suboptimal couplings") {
  TempDir dir;
  RunConfig config;
  config.instance_path = dir.file("inst.json", kRunningInstance).string();
  config.command = Command::certify;

  const char* optimal = R"([
    {"x": "a", "y": "b", "w": "1/5"},
    {"x": "c", "y": "d", "w": "1/2"},
    {"x": "a", "y": "d", "w": "3/10"}
  ])";
  config.coupling_path = dir.file("opt.json", optimal).string();
  RunResult good = invoke(config);
  CHECK(good.code == 0);
  CHECK(good.out.find("pE 7/10") != std::string::npos);
  CHECK(good.out.find("pAAc 3/10") != std::string::npos);

  const char* suboptimal = R"([
    {"x": "a", "y": "b", "w": "1/10"},
    {"x": "a", "y": "d", "w": "2/5"},
    {"x": "c", "y": "b", "w": "1/10"},
    {"x": "c", "y": "d", "w": "2/5"}
  ])";
  config.coupling_path = dir.file("bad.json", suboptimal).string();
  RunResult bad = invoke(config);
  CHECK(bad.code == 1);
  CHECK(bad.out.find("certified false") != std::string::npos);

  const char* invalid = R"([{"x": "a", "y": "a", "w": "1"}])";
  config.coupling_path = dir.file("invalid.json", invalid).string();
  RunResult broken = invoke(config);
  CHECK(broken.code == 2);
}

TEST_CASE("couple output feeds straight back into certify") {
  TempDir dir;
  RunConfig couple;
  couple.command = Command::couple;
  couple.instance_path = dir.file("inst.json", kRunningInstance).string();
  couple.format = RunConfig::Format::json;
  couple.output_path = (dir.path / "constructed.json").string();
  CHECK(invoke(couple).code == 0);

  RunConfig certify;
  certify.command = Command::certify;
  certify.instance_path = couple.instance_path;
  certify.coupling_path = couple.output_path;
  RunResult result = invoke(certify);
  CHECK(result.code == 0);
  CHECK(result.out.find("pAAc 3/10") != std::string::npos);
}

TEST_CASE("input errors exit with code 2") {
  TempDir dir;
  RunConfig config;
  config.command = Command::tv;
  config.instance_path = (dir.path / "missing.json").string();
  CHECK(invoke(config).code == 2);

  config.instance_path = dir.file("broken.json", "{oops").string();
  CHECK(invoke(config).code == 2);

  config.instance_path =
      dir.file("unknown_key.json", R"({"points": ["a"], "classes": {"a": "C"},
        "mu": {"a": "1"}, "nu": {"a": "1"}, "bogus": []})")
          .string();
  CHECK(invoke(config).code == 2);
}

TEST_CASE("ingest reproduces the hand-written instance byte for byte") {
  TempDir dir;
  const char* csv =
      "point_id,class_label,mu_count,nu_count\n"
      "a,C1,5,0\n"
      "b,C1,0,2\n"
      "c,C2,5,0\n"
      "d,C2,0,8\n";
  RunConfig ingest;
  ingest.command = Command::ingest;
  ingest.csv_path = dir.file("counts.csv", csv).string();
  ingest.output_path = (dir.path / "ingested.json").string();
  CHECK(invoke(ingest).code == 0);

  Instance by_hand = parse_instance_json(kRunningInstance);
  Instance from_csv = load_instance(ingest.output_path);
  CHECK(instance_to_json(from_csv) == instance_to_json(by_hand));

  // tv over either file is byte-identical
  RunConfig tv_csv;
  tv_csv.command = Command::tv;
  tv_csv.instance_path = ingest.output_path;
  RunConfig tv_hand;
  tv_hand.command = Command::tv;
  tv_hand.instance_path = dir.file("hand.json", kRunningInstance).string();
  CHECK(invoke(tv_csv).out == invoke(tv_hand).out);
}

TEST_CASE("ingest edge cases") {
  TempDir dir;
  RunConfig config;
  config.command = Command::ingest;

  // a single row makes both measures the same point mass
  config.csv_path = dir.file("one.csv", "point_id,class_label,mu_count,nu_count\na,C1,1,1\n")
                        .string();
  RunResult one = invoke(config);
  CHECK(one.code == 0);
  Instance inst = parse_instance_json(one.out);
  CHECK(tv_invariant(inst.mu, inst.nu).value == Rational(0));

  // duplicate point rows accumulate counts
  config.csv_path = dir.file("dup.csv",
                             "point_id,class_label,mu_count,nu_count\n"
                             "a,C1,2,1\n"
                             "a,C1,3,0\n"
                             "b,C2,5,9\n")
                        .string();
  RunResult dup = invoke(config);
  CHECK(dup.code == 0);
  Instance accumulated = parse_instance_json(dup.out);
  CHECK(accumulated.mu.weight(0) == Rational(1, 2));
  CHECK(accumulated.nu.weight(0) == Rational(1, 10));

  // uniform weighting ignores the counts
  config.weighting = Weighting::uniform;
  RunResult uniform = invoke(config);
  CHECK(uniform.code == 0);
  Instance flat = parse_instance_json(uniform.out);
  CHECK(flat.mu.weight(0) == Rational(1, 2));
  CHECK(flat.nu.weight(1) == Rational(1, 2));
  config.weighting = Weighting::counts;

  // malformed rows and zero totals are input errors
  config.csv_path = dir.file("short.csv", "point_id,class_label,mu_count,nu_count\na,C1,1\n")
                        .string();
  CHECK(invoke(config).code == 2);
  config.csv_path = dir.file("zeros.csv", "point_id,class_label,mu_count,nu_count\na,C1,0,1\n")
                        .string();
  CHECK(invoke(config).code == 2);
  config.csv_path = dir.file("header.csv", "point,label,mu,nu\na,C1,1,1\n").string();
  CHECK(invoke(config).code == 2);
}

TEST_CASE("sample output is deterministic per seed and worker count") {
  TempDir dir;
  RunConfig config;
  config.command = Command::sample;
  config.instance_path = dir.file("inst.json", kRunningInstance).string();
  config.samples = 5000;
  config.seed = 99;
  config.format = RunConfig::Format::json;

  config.output_path = (dir.path / "report1.json").string();
  CHECK(invoke(config).code == 0);
  config.output_path = (dir.path / "report2.json").string();
  CHECK(invoke(config).code == 0);
  CHECK(read_file(dir.path / "report1.json") == read_file(dir.path / "report2.json"));

  auto parsed = nlohmann::json::parse(read_file(dir.path / "report1.json"));
  CHECK(parsed["n"] == 5000);
  CHECK(parsed["seed"] == 99);
  CHECK(parsed["workers"] == 4);
}

TEST_CASE("installed binary honors the exit-code contract") {
  const char* bin = std::getenv("EVC_BIN");
  if (bin == nullptr) return;  // only meaningful under ctest
  TempDir dir;
  fs::path inst = dir.file("inst.json", kRunningInstance);

  auto shell = [&](const std::string& args) {
    std::string command = std::string(bin) + " " + args + " > /dev/null 2>&1";
    int status = std::system(command.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(shell("tv --instance " + inst.string()) == 0);
  CHECK(shell("verify --instance " + inst.string()) == 0);
  CHECK(shell("tv --instance " + (dir.path / "nope.json").string()) == 2);
  CHECK(shell("bogus-subcommand") == 2);
  CHECK(shell("tv") == 2);  // --instance is required
}
