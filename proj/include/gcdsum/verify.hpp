// Self-check suite behind `gcdsum verify`: oracle equivalences, constant
// reproduction, and error-envelope checks, one line per check.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gcdsum/numeric.hpp"

namespace gcdsum {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

struct VerifyOptions {
  i64 oracle_max = 3000;
  i64 envelope_x_max = 10'000'000;
  int envelope_points = 40;
};

// Runs every check; if `log` is set, prints each result as it completes.
std::vector<CheckResult> run_verification(const VerifyOptions& options, std::ostream* log = nullptr);

}  // namespace gcdsum
