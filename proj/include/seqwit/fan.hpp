#pragma once

#include <compare>
#include <cstdint>
#include <map>

#include <json.hpp>

#include "seqwit/error.hpp"

namespace seqwit {

class DefinableSet;
struct SuiteReport;

/// Point of the sequential fan: the apex, or the m-th point of the n-th
/// spoke. Spoke and depth indices are 1-based; spoke 0 encodes the apex.
struct FanPoint {
  std::int64_t spoke = 0;
  std::int64_t depth = 0;

  static FanPoint apex() { return FanPoint{}; }

  static FanPoint node(std::int64_t spoke, std::int64_t depth) {
    if (spoke < 1 || depth < 1)
      throw Error(ErrorCode::InvalidDescriptor, "node indices must be >= 1");
    return FanPoint{spoke, depth};
  }

  bool is_apex() const { return spoke == 0; }

  auto operator<=>(const FanPoint&) const = default;
};

/// Basic neighborhood of the apex with finitely-supported-over-constant
/// thresholds: spoke n admits depths >= overrides[n] (default_threshold
/// when no override is present). Normalized so that no override equals
/// the default.
class NeighborhoodSpec {
 public:
  explicit NeighborhoodSpec(std::int64_t default_threshold = 1,
                            std::map<std::int64_t, std::int64_t> overrides = {})
      : default_(default_threshold), overrides_(std::move(overrides)) {
    if (default_ < 1)
      throw Error(ErrorCode::InvalidDescriptor, "threshold must be >= 1");
    for (auto it = overrides_.begin(); it != overrides_.end();) {
      if (it->first < 1 || it->second < 1)
        throw Error(ErrorCode::InvalidDescriptor, "threshold must be >= 1");
      if (it->second == default_)
        it = overrides_.erase(it);
      else
        ++it;
    }
  }

  std::int64_t default_threshold() const { return default_; }
  const std::map<std::int64_t, std::int64_t>& overrides() const {
    return overrides_;
  }

  std::int64_t threshold(std::int64_t spoke) const {
    auto it = overrides_.find(spoke);
    return it == overrides_.end() ? default_ : it->second;
  }

  bool operator==(const NeighborhoodSpec&) const = default;

 private:
  std::int64_t default_;
  std::map<std::int64_t, std::int64_t> overrides_;
};

/// Threshold function used in exclusion certificates. Extends the
/// NeighborhoodSpec shape with an optional affine term so that row sets
/// with positive slope can be separated (the paper's pattern f(n)=m_n+1
/// grows linearly there). threshold(n) = max(base-or-override, slope*n +
/// intercept). slope == 0 degenerates to a plain NeighborhoodSpec.
struct ThresholdCover {
  std::int64_t base = 1;
  std::map<std::int64_t, std::int64_t> overrides;
  std::int64_t slope = 0;
  std::int64_t intercept = 0;

  std::int64_t threshold(std::int64_t spoke) const {
    auto it = overrides.find(spoke);
    std::int64_t t = it == overrides.end() ? base : it->second;
    if (slope > 0 || intercept > t) {
      std::int64_t aff = slope * spoke + intercept;
      if (aff > t) t = aff;
    }
    return t < 1 ? 1 : t;
  }

  bool contains(const FanPoint& x) const {
    return x.is_apex() || x.depth >= threshold(x.spoke);
  }

  bool is_plain() const { return slope == 0 && intercept <= base; }

  NeighborhoodSpec to_neighborhood() const;

  nlohmann::json to_json() const;
};

/// Decision with machine-checkable evidence. `certificate` is a JSON
/// object whose shape depends on the operation; it always carries enough
/// data for independent re-validation.
struct Decision {
  bool value = false;
  nlohmann::json certificate;

  explicit operator bool() const { return value; }
};

bool neighborhood_contains(const NeighborhoodSpec& u, const FanPoint& x);

/// Neighborhood of the apex excluding the given node: one override at
/// spoke(x) with threshold depth(x)+1 over default 1.
NeighborhoodSpec excluding_neighborhood(const FanPoint& x);

/// Validates an excluding neighborhood for every node in the truncation;
/// the report counts the certificates and embeds a bounded sample.
SuiteReport kernel_certificate(std::int64_t max_spoke, std::int64_t max_depth);

/// True iff some spoke meets M infinitely (certificate: spoke plus the
/// witnessing residue class). False certificate: a ThresholdCover with
/// all of M outside, beyond explicitly listed finite exceptions.
Decision accumulates_at_apex(const DefinableSet& m);

nlohmann::json to_json(const FanPoint& p);
nlohmann::json to_json(const NeighborhoodSpec& u);
FanPoint fan_point_from_json(const nlohmann::json& j);
NeighborhoodSpec neighborhood_from_json(const nlohmann::json& j);

}  // namespace seqwit
