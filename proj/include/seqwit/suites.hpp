#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqwit/report.hpp"

namespace seqwit {

/// Configuration shared by every verification suite. The seed is echoed
/// verbatim into the report; identical configs produce byte-identical
/// JSON output.
struct SuiteConfig {
  std::string suite;
  std::int64_t max_spoke = 16;
  std::int64_t max_depth = 2048;
  std::int64_t probes = 100;
  std::uint64_t seed = 1;
  std::string format = "json";  // json | markdown
  double realline_tol = 1e-9;
};

const std::vector<std::string>& suite_names();

/// Runs the named suite; throws UnknownSuite for anything else.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace seqwit
