#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hexfourier::cli {

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 42;
  double delta = 2.0;  // order used by the cesaro suite
};

struct VerifyTally {
  int checks = 0;
  int failures = 0;
};

const std::vector<std::string>& verify_suite_names();

// Runs the named oracle suite, printing one PASS/FAIL line per check.
VerifyTally run_verify(const VerifyOptions& opts, std::ostream& out);

}  // namespace hexfourier::cli
