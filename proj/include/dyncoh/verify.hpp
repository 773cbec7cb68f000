#pragma once

#include <string>
#include <vector>

namespace dyncoh::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteConfig {
  bool allow_large = false;  // adds the E7 row to the table suite
  int parallelism = 1;
};

// Suites: table, classical, quasi-iso, stabilisation, affine, all.
std::vector<CheckResult> run_suite(const std::string& suite, const SuiteConfig& cfg = {});

// Published cohomology table for the exceptional groups (degrees 2..n).
// E8 is out of reach of the generic engine at desk scale; its row is
// reference data only and is marked untested.
struct ReferenceRow {
  const char* label;
  std::vector<int> dims;
  bool engine_tested;
};
const std::vector<ReferenceRow>& exceptional_reference_table();

}  // namespace dyncoh::verify
