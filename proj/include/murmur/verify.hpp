#pragma once

#include <string>
#include <vector>

namespace murmur::verify {

struct CheckResult {
  std::string criterion;
  bool passed = false;
  std::string detail;
};

struct SuiteConfig {
  std::string data_dir;    // bundled toy corpus location
  std::string curves_file; // optional external curve corpus (e.g. LMFDB-derived)
  std::string zeros_file;  // optional external zeros for those curves
  std::string cli_path;    // CLI binary for the determinism suite
};

// fd-count, dirichlet-closure, zero-sanity, l-oracles, ap, pair-identity,
// structure-ordering, jumps, determinism, heuristic-identity
std::vector<std::string> suite_names();

// Runs one named suite, or every suite for "all".
std::vector<CheckResult> run_suite(const std::string& name, const SuiteConfig& cfg);

} // namespace murmur::verify
