// Command-line front end: load system descriptors, run verification suites,
// run the registered examples, emit machine-readable reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "bbk/suites.hpp"

namespace {

int writeReport(const bbk::Report& report, const std::string& path) {
  bbk::Json j = report.toJson();
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(path);
    if (!out) {
      std::cerr << "cannot write report to " << path << "\n";
      return 2;
    }
    out << j.dump(2) << "\n";
  }
  return report.allPass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification engine for finite bulk-boundary field theory models"};
  app.require_subcommand(1);

  std::string input, suite = "all", reportPath;
  int symTrunc = 2, arityBudget = 3, polyCap = 0, weightCap = 2;

  auto addCommonFlags = [&](CLI::App* cmd) {
    cmd->add_option("--sym-trunc", symTrunc, "symmetric-power truncation")->check(CLI::PositiveNumber);
    cmd->add_option("--arity-budget", arityBudget, "bracket arity budget")->check(CLI::PositiveNumber);
    cmd->add_option("--poly-cap", polyCap, "polynomial degree cap override");
    cmd->add_option("--weight-cap", weightCap, "coefficient weight cap")->check(CLI::PositiveNumber);
    cmd->add_option("--report", reportPath, "write the JSON report to this path");
  };

  auto* verify = app.add_subcommand("verify", "run verification suites on a system descriptor");
  verify->add_option("--input", input, "system descriptor JSON")->required();
  verify->add_option("--suite", suite, "bv | lagrangian | factorization | p0 | all");
  addCommonFlags(verify);

  auto* examples = app.add_subcommand("examples", "registered example systems and computations");
  auto* exList = examples->add_subcommand("list", "list registered example names");
  std::string exampleName;
  auto* exRun = examples->add_subcommand("run", "run a registered example");
  exRun->add_option("name", exampleName, "example name")->required();
  addCommonFlags(exRun);
  auto* exEmit = examples->add_subcommand("emit", "print the descriptor of a system example");
  exEmit->add_option("name", exampleName, "example name")->required();

  auto* schema = app.add_subcommand("emit-schema", "print the descriptor schema");

  CLI11_PARSE(app, argc, argv);

  bbk::SuiteConfig cfg;
  cfg.symTruncation = symTrunc;
  cfg.weightCap = weightCap;
  cfg.threads = bbk::threadBudgetFromEnv();

  if (schema->parsed()) {
    std::cout << bbk::systemSchema().dump(2) << "\n";
    return 0;
  }

  if (verify->parsed()) {
    if (!bbk::knownSuite(suite)) {
      std::cerr << "unknown suite '" << suite << "'\n";
      return 2;
    }
    std::ifstream in(input);
    if (!in) {
      std::cerr << "cannot open " << input << "\n";
      return 2;
    }
    bbk::Json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      std::cerr << "invalid JSON: " << e.what() << "\n";
      return 2;
    }
    if (j.contains("boundary") && j["boundary"].is_object()) {
      j["boundary"]["maxArity"] = arityBudget;
    }
    if (polyCap > 0) j["polyCap"] = polyCap;
    auto parsed = bbk::systemFromJson(j);
    if (std::holds_alternative<bbk::ParseError>(parsed)) {
      std::cerr << "invalid descriptor at " << std::get<bbk::ParseError>(parsed).str() << "\n";
      return 2;
    }
    auto& sys = std::get<bbk::BulkBoundarySystem>(parsed);
    auto report = bbk::runSuite(sys, suite, cfg);
    return writeReport(report, reportPath);
  }

  if (exList->parsed()) {
    for (const auto& n : bbk::exampleNames()) std::cout << n << "\n";
    return 0;
  }
  if (exRun->parsed()) {
    auto report = bbk::runExample(exampleName, cfg);
    if (!report) {
      std::cerr << "unknown example '" << exampleName << "'\n";
      return 2;
    }
    return writeReport(*report, reportPath);
  }
  if (exEmit->parsed()) {
    auto j = bbk::exampleDescriptor(exampleName);
    if (!j) {
      std::cerr << "no descriptor for '" << exampleName << "'\n";
      return 2;
    }
    std::cout << j->dump(2) << "\n";
    return 0;
  }
  return 2;
}
