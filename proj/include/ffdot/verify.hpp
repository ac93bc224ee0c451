#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ffdot {

struct VerifyOptions {
  int64_t qmax = 13;
  int dmax = 3;
  int64_t trials = 200;
  uint64_t seed = 0;
  int threads = 0;  // <= 0 means hardware concurrency
};

struct SuiteResult {
  std::string suite;
  int64_t cells = 0;
  int64_t checks = 0;
  int64_t skipped = 0;               // out-of-hypothesis trials, never failures
  std::vector<std::string> notes;    // skip summaries and structural observations
  std::vector<std::string> failures; // each line carries its reproduction seed

  bool passed() const { return failures.empty(); }
};

// Suite names accepted by run_suite, in canonical order ("all" excluded).
const std::vector<std::string>& verify_suites();

SuiteResult run_suite(const std::string& suite, const VerifyOptions& opt);

// Runs one suite or "all", printing a log to os. Returns 0 iff every check
// passed. Throws std::invalid_argument for unknown suites or bad options.
int run_verify(const std::string& suite, const VerifyOptions& opt, std::ostream& os);

}  // namespace ffdot
