// Acceptance suite: one pass/fail line per criterion. Exits nonzero if any
// criterion fails. Data directory and optional external corpus come from the
// environment (MURMUR_DATA_DIR, MURMUR_LMFDB_CURVES, MURMUR_LMFDB_ZEROS,
// MURMUR_CLI).

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "murmur/verify.hpp"

#ifndef MURMUR_DATA_DIR
#define MURMUR_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
  std::string suite = "all";
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--suite") == 0 && i + 1 < argc) suite = argv[++i];
  }

  murmur::verify::SuiteConfig cfg;
  cfg.data_dir = MURMUR_DATA_DIR;
  if (const char* env = std::getenv("MURMUR_DATA_DIR")) cfg.data_dir = env;
  if (const char* env = std::getenv("MURMUR_LMFDB_CURVES")) cfg.curves_file = env;
  if (const char* env = std::getenv("MURMUR_LMFDB_ZEROS")) cfg.zeros_file = env;
  if (const char* env = std::getenv("MURMUR_CLI")) cfg.cli_path = env;

  int failures = 0;
  try {
    for (const auto& r : murmur::verify::run_suite(suite, cfg)) {
      std::printf("%s  %-20s %s\n", r.passed ? "PASS" : "FAIL", r.criterion.c_str(),
                  r.detail.c_str());
      std::fflush(stdout);
      if (!r.passed) ++failures;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
