#include "seqwit/report.hpp"

#include <algorithm>
#include <sstream>

namespace seqwit {

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

std::size_t SuiteReport::failure_count() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(),
                    [](const CheckResult& c) { return !c.pass; }));
}

void SuiteReport::finalize() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     return a.id < b.id;
                   });
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "seqwit/1";
  j["suite"] = suite;
  j["seed"] = seed;
  j["config"] = config;
  j["verdict"] = pass() ? "pass" : "fail";
  if (!note.empty()) j["note"] = note;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json cj;
    cj["id"] = c.id;
    cj["status"] = c.pass ? "pass" : "fail";
    cj["claim"] = c.claim;
    cj["details"] = c.details;
    arr.push_back(std::move(cj));
  }
  j["checks"] = std::move(arr);
  return j;
}

std::string SuiteReport::to_markdown() const {
  std::ostringstream os;
  os << "# Suite `" << suite << "`\n\n";
  os << "- verdict: **" << (pass() ? "pass" : "fail") << "**\n";
  os << "- seed: `" << seed << "`\n";
  os << "- config: `" << config.dump() << "`\n";
  if (!note.empty()) os << "- note: " << note << "\n";
  os << "\n| check | status | claim |\n|---|---|---|\n";
  for (const auto& c : checks) {
    os << "| `" << c.id << "` | " << (c.pass ? "pass" : "fail") << " | "
       << c.claim << " |\n";
  }
  return os.str();
}

}  // namespace seqwit
