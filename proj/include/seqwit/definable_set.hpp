#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <variant>
#include <vector>

#include <json.hpp>

#include "seqwit/fan.hpp"

namespace seqwit {

/// Finite set of depths on one spoke.
struct FiniteChunk {
  std::set<std::int64_t> depths;

  bool operator==(const FiniteChunk&) const = default;
};

/// Arithmetic progression of depths {start, start+stride, ...} minus a
/// finite excluded subset of the progression.
struct StridedTail {
  std::int64_t start = 1;
  std::int64_t stride = 1;
  std::set<std::int64_t> excluded;

  bool on_progression(std::int64_t depth) const {
    return depth >= start && (depth - start) % stride == 0;
  }
  bool contains(std::int64_t depth) const {
    return on_progression(depth) && !excluded.count(depth);
  }
  /// Smallest progression element past every exclusion.
  std::int64_t clear_start() const {
    if (excluded.empty()) return start;
    return *excluded.rbegin() + stride;
  }

  bool operator==(const StridedTail&) const = default;
};

using SpokePart = std::variant<FiniteChunk, StridedTail>;

/// Affine row {Node(n, slope*n + intercept) : n >= start_spoke}; meets
/// each spoke in at most one point, so it can never lie in I_P.
struct RowComponent {
  std::int64_t start_spoke = 1;
  std::int64_t slope = 0;
  std::int64_t intercept = 1;

  std::int64_t depth_at(std::int64_t spoke) const {
    return slope * spoke + intercept;
  }
  bool contains(const FanPoint& x) const {
    return !x.is_apex() && x.spoke >= start_spoke && x.depth == depth_at(x.spoke);
  }

  auto operator<=>(const RowComponent&) const = default;
};

struct SetSize {
  bool infinite = false;
  std::int64_t count = 0;  // exact when finite

  bool operator==(const SetSize&) const = default;
};

struct IntersectionResult {
  SetSize size;
  std::vector<FanPoint> finite_points;  // all points, when finite
  nlohmann::json certificate;
};

struct SpokeSupport {
  bool unbounded_rows = false;
  std::set<std::int64_t> spokes;
};

/// Definable subset of the fan minus the apex: at most one spoke
/// component per spoke (merged exactly at construction) plus finitely
/// many affine rows. Unions that cannot be merged into this normal form
/// are rejected rather than approximated.
class DefinableSet {
 public:
  DefinableSet() = default;

  void add_chunk(std::int64_t spoke, std::set<std::int64_t> depths);
  void add_tail(std::int64_t spoke, std::int64_t start, std::int64_t stride,
                std::set<std::int64_t> excluded = {});
  void add_row(std::int64_t start_spoke, std::int64_t slope,
               std::int64_t intercept);

  /// Full spoke B_n.
  static DefinableSet full_spoke(std::int64_t n);

  const std::map<std::int64_t, SpokePart>& spoke_components() const {
    return spokes_;
  }
  const std::vector<RowComponent>& row_components() const { return rows_; }

  bool empty() const { return spokes_.empty() && rows_.empty(); }

  bool operator==(const DefinableSet&) const = default;

 private:
  std::map<std::int64_t, SpokePart> spokes_;
  std::vector<RowComponent> rows_;  // sorted, unique
};

bool member(const DefinableSet& m, const FanPoint& x);

SetSize cardinality_class(const DefinableSet& m);

/// Exact intersection classification. Infinite certificates name a spoke
/// and a common residue class (CRT on the two progressions) or a pair of
/// overlapping rows; finite certificates list every intersection point.
IntersectionResult intersection_class(const DefinableSet& m,
                                      const DefinableSet& n);

bool almost_disjoint(const DefinableSet& m, const DefinableSet& n);

/// Membership in I_P: infinite and free of rows (hence contained in the
/// union of finitely many spokes). False certificates are either
/// "finite" or an exclusion cover with an infinite escaping family.
Decision in_IP(const DefinableSet& m);

SpokeSupport spoke_support(const DefinableSet& m);

nlohmann::json to_json(const DefinableSet& m);
DefinableSet definable_set_from_json(const nlohmann::json& j);

}  // namespace seqwit
