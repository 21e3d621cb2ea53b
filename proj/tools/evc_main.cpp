// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "evc/cli.hpp"

namespace {

void add_common_options(CLI::App* sub, evc::RunConfig& config, bool needs_instance) {
  auto* instance = sub->add_option("--instance", config.instance_path, "instance JSON file");
  if (needs_instance) instance->required();
  sub->add_option("--out", config.output_path, "write the report to this file");
  std::map<std::string, evc::RunConfig::Format> formats{
      {"json", evc::RunConfig::Format::json}, {"text", evc::RunConfig::Format::text}};
  sub->add_option("--format", config.format, "output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivalence couplings, invariant total variation, and transport verification"};
  app.require_subcommand(1);

  evc::RunConfig config;

  auto* tv = app.add_subcommand("tv", "total variation over the invariant sigma-field");
  add_common_options(tv, config, true);

  auto* couple = app.add_subcommand("couple", "optimal coupling and its cost");
  add_common_options(couple, config, true);

  auto* kl8 = app.add_subcommand("kl8", "maximal-coupling plan, exact law, and nu0");
  add_common_options(kl8, config, true);

  auto* sample = app.add_subcommand("sample", "Monte Carlo draws from the maximal coupling");
  add_common_options(sample, config, true);
  sample->add_option("--seed", config.seed, "RNG seed");
  sample->add_option("--samples", config.samples, "number of draws")
      ->check(CLI::PositiveNumber);
  sample->add_option("--workers", config.workers, "deterministic worker streams")
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "oracle vs invariant TV duality check");
  add_common_options(verify, config, true);

  auto* certify = app.add_subcommand("certify", "optimality certificate for a coupling file");
  add_common_options(certify, config, true);
  certify->add_option("--coupling", config.coupling_path, "coupling JSON file")->required();

  auto* ingest = app.add_subcommand("ingest", "convert a labeled-count CSV into an instance file");
  add_common_options(ingest, config, false);
  ingest->add_option("--csv", config.csv_path, "CSV input file")->required();
  std::map<std::string, evc::Weighting> weightings{{"counts", evc::Weighting::counts},
                                                   {"uniform", evc::Weighting::uniform}};
  ingest->add_option("--weighting", config.weighting, "counts (empirical) or uniform")
      ->transform(CLI::CheckedTransformer(weightings, CLI::ignore_case));

  auto* selftest = app.add_subcommand("selftest", "run the embedded acceptance suite");
  add_common_options(selftest, config, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly, bad usage is an input error
  }

  if (tv->parsed()) config.command = evc::Command::tv;
  if (couple->parsed()) config.command = evc::Command::couple;
  if (kl8->parsed()) config.command = evc::Command::kl8;
  if (sample->parsed()) config.command = evc::Command::sample;
  if (verify->parsed()) config.command = evc::Command::verify;
  if (certify->parsed()) config.command = evc::Command::certify;
  if (ingest->parsed()) config.command = evc::Command::ingest;
  if (selftest->parsed()) config.command = evc::Command::selftest;

  return evc::run(config, std::cout, std::cerr);
}
