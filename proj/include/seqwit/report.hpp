#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace seqwit {

/// One verified claim inside a suite run. `claim` names the statement the
/// check traces to, for the traceability column of rendered reports.
struct CheckResult {
  std::string id;
  bool pass = false;
  std::string claim;
  nlohmann::json details;
};

/// Machine-checkable evidence object emitted by every suite-level
/// decision. Reports are assembled deterministically: checks are sorted
/// by id before rendering, and the seed/config are echoed verbatim.
struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  std::vector<CheckResult> checks;
  std::string note;

  bool pass() const;
  std::size_t failure_count() const;

  void add(CheckResult check) { checks.push_back(std::move(check)); }
  void add(const std::string& id, bool ok, const std::string& claim,
           nlohmann::json details = nlohmann::json::object()) {
    checks.push_back(CheckResult{id, ok, claim, std::move(details)});
  }

  /// Stable sort by check id; called before rendering so that the output
  /// does not depend on evaluation order.
  void finalize();

  nlohmann::json to_json() const;
  std::string to_markdown() const;
};

}  // namespace seqwit
