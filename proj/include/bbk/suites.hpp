#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbk/examples.hpp"
#include "bbk/json_io.hpp"

namespace bbk {

struct SuiteConfig {
  int symTruncation = 2;
  int weightCap = 2;
  int defectTrials = 100;
  int homotopyTrials = 200;
  unsigned seed = 20260808;
  int threads = 1;
};

struct CheckRecord {
  std::string id;
  std::string anchor;  // stable audit key for the check family
  std::string status;  // pass | fail | skipped
  std::string witness;
  double wallMs = 0;
};

struct Report {
  std::string subject;
  std::vector<CheckRecord> checks;
  bool allPass() const;
  Json toJson() const;
};

const std::vector<std::string>& suiteNames();
bool knownSuite(const std::string& name);

/// Runs one of: bv, lagrangian, factorization, p0, all.
Report runSuite(const BulkBoundarySystem& sys, const std::string& suite, const SuiteConfig& cfg);

const std::vector<std::string>& exampleNames();
/// Builds the named example and runs its report; empty for unknown names.
std::optional<Report> runExample(const std::string& name, const SuiteConfig& cfg);
/// Descriptor JSON for the system-backed examples; empty for computation-only
/// entries.
std::optional<Json> exampleDescriptor(const std::string& name);

/// Reads BBK_THREADS; falls back to 1.
int threadBudgetFromEnv();

}  // namespace bbk
