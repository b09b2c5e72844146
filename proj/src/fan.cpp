#include "seqwit/fan.hpp"

#include <string>

#include "seqwit/definable_set.hpp"
#include "seqwit/report.hpp"

namespace seqwit {

NeighborhoodSpec ThresholdCover::to_neighborhood() const {
  if (slope != 0)
    throw Error(ErrorCode::UnsupportedSet,
                "affine cover has no finitely-supported representation");
  std::int64_t d = base > intercept ? base : intercept;
  std::map<std::int64_t, std::int64_t> ov;
  for (const auto& [spoke, t] : overrides)
    ov[spoke] = t > d ? t : d;
  return NeighborhoodSpec(d, std::move(ov));
}

nlohmann::json ThresholdCover::to_json() const {
  nlohmann::json j;
  j["default"] = base;
  nlohmann::json ov = nlohmann::json::object();
  for (const auto& [spoke, t] : overrides) ov[std::to_string(spoke)] = t;
  j["overrides"] = std::move(ov);
  if (slope != 0 || intercept > base)
    j["affine"] = {{"slope", slope}, {"intercept", intercept}};
  return j;
}

bool neighborhood_contains(const NeighborhoodSpec& u, const FanPoint& x) {
  if (x.is_apex()) return true;
  return x.depth >= u.threshold(x.spoke);
}

NeighborhoodSpec excluding_neighborhood(const FanPoint& x) {
  if (x.is_apex())
    throw Error(ErrorCode::ApexNotExcludable,
                "the apex lies in every neighborhood");
  return NeighborhoodSpec(1, {{x.spoke, x.depth + 1}});
}

SuiteReport kernel_certificate(std::int64_t max_spoke, std::int64_t max_depth) {
  if (max_spoke < 1 || max_depth < 1)
    throw Error(ErrorCode::InvalidConfig, "truncation bounds must be >= 1");
  SuiteReport report;
  report.suite = "kernel";
  report.config = {{"max_spoke", max_spoke}, {"max_depth", max_depth}};

  std::int64_t validated = 0;
  std::int64_t failures = 0;
  nlohmann::json sample = nlohmann::json::array();
  for (std::int64_t n = 1; n <= max_spoke; ++n) {
    for (std::int64_t m = 1; m <= max_depth; ++m) {
      FanPoint x = FanPoint::node(n, m);
      NeighborhoodSpec u = excluding_neighborhood(x);
      bool ok = !neighborhood_contains(u, x) && neighborhood_contains(u, FanPoint::apex());
      if (ok)
        ++validated;
      else
        ++failures;
      if (sample.size() < 8)
        sample.push_back({{"point", to_json(x)}, {"neighborhood", to_json(u)}});
    }
  }
  report.add("kernel.certificates", failures == 0,
             "every node is excluded by a validated neighborhood of the apex",
             {{"validated", validated},
              {"failures", failures},
              {"sample", std::move(sample)}});
  report.finalize();
  return report;
}

Decision accumulates_at_apex(const DefinableSet& m) {
  // A definable set meets a spoke infinitely iff it carries a strided
  // tail there; rows meet each spoke at most once.
  for (const auto& [spoke, part] : m.spoke_components()) {
    if (const auto* tail = std::get_if<StridedTail>(&part)) {
      nlohmann::json cert;
      cert["kind"] = "accumulating-spoke";
      cert["spoke"] = spoke;
      cert["residue"] = {{"start", tail->clear_start()},
                         {"stride", tail->stride}};
      return Decision{true, std::move(cert)};
    }
  }

  // No tail: build an exclusion cover. Chunks get per-spoke overrides;
  // rows contribute the affine part (constant-depth rows fold into the
  // base threshold).
  ThresholdCover cover;
  std::vector<nlohmann::json> exceptions;
  for (const auto& [spoke, part] : m.spoke_components()) {
    const auto& chunk = std::get<FiniteChunk>(part);
    if (!chunk.depths.empty()) cover.overrides[spoke] = *chunk.depths.rbegin() + 1;
  }
  for (const auto& row : m.row_components()) {
    if (row.slope > cover.slope) cover.slope = row.slope;
    if (row.intercept + 1 > cover.intercept) cover.intercept = row.intercept + 1;
  }
  // Per-spoke overrides must dominate every row depth on that spoke.
  for (auto& [spoke, t] : cover.overrides) {
    for (const auto& row : m.row_components()) {
      if (spoke >= row.start_spoke && row.depth_at(spoke) + 1 > t)
        t = row.depth_at(spoke) + 1;
    }
  }
  nlohmann::json cert;
  cert["kind"] = "separating-neighborhood";
  cert["cover"] = cover.to_json();
  cert["exceptions"] = nlohmann::json::array();
  return Decision{false, std::move(cert)};
}

nlohmann::json to_json(const FanPoint& p) {
  if (p.is_apex()) return {{"apex", true}};
  return {{"spoke", p.spoke}, {"depth", p.depth}};
}

nlohmann::json to_json(const NeighborhoodSpec& u) {
  nlohmann::json ov = nlohmann::json::object();
  for (const auto& [spoke, t] : u.overrides()) ov[std::to_string(spoke)] = t;
  return {{"default", u.default_threshold()}, {"overrides", std::move(ov)}};
}

FanPoint fan_point_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("apex") && j.at("apex").get<bool>()) return FanPoint::apex();
    return FanPoint::node(j.at("spoke").get<std::int64_t>(),
                          j.at("depth").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("fan point: ") + e.what());
  }
}

NeighborhoodSpec neighborhood_from_json(const nlohmann::json& j) {
  try {
    std::map<std::int64_t, std::int64_t> overrides;
    if (j.contains("overrides")) {
      for (const auto& [key, value] : j.at("overrides").items())
        overrides[std::stoll(key)] = value.get<std::int64_t>();
    }
    return NeighborhoodSpec(j.at("default").get<std::int64_t>(),
                            std::move(overrides));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("neighborhood: ") + e.what());
  }
}

}  // namespace seqwit
