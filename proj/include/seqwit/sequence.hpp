#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include <json.hpp>

#include "seqwit/definable_set.hpp"
#include "seqwit/fan.hpp"

namespace seqwit {

/// Emits Node(spoke, m) for m = start, start+stride, ... in increasing
/// order, omitting the finitely many skipped progression depths.
struct SpokeRun {
  std::int64_t spoke = 1;
  std::int64_t start = 1;
  std::int64_t stride = 1;
  std::set<std::int64_t> skipped;

  auto operator<=>(const SpokeRun&) const = default;
};

struct ConstApex {
  auto operator<=>(const ConstApex&) const = default;
};

struct ConstNode {
  FanPoint node;
  auto operator<=>(const ConstNode&) const = default;
};

using Channel = std::variant<SpokeRun, ConstApex, ConstNode>;

/// Definable sequence: a finite prefix followed by a round-robin
/// interleaving of the channels. term(k) is total for every k >= 1.
struct SequenceDescriptor {
  std::vector<FanPoint> prefix;
  std::vector<Channel> channels;  // nonempty

  bool operator==(const SequenceDescriptor&) const = default;
};

/// The canonical spoke sequence T_n = (x_{n,k})_k.
SequenceDescriptor canonical_sequence(std::int64_t spoke);

void validate(const SequenceDescriptor& t);

/// j-th emission of a channel, j >= 1. O(|skipped|) via offset fixpoint.
FanPoint channel_term(const Channel& ch, std::int64_t j);

FanPoint term(const SequenceDescriptor& t, std::int64_t k);

/// True iff every channel is a SpokeRun or ConstApex. False certificate:
/// an excluding neighborhood for some ConstNode channel plus the residue
/// class of indices escaping it.
Decision converges_to_apex(const SequenceDescriptor& t);

/// Least N such that term(t,k) lies in u for every k >= N. Requires
/// converges_to_apex(t); this is the absorption index the convergence
/// certificate promises for each neighborhood query.
std::int64_t absorption_index(const SequenceDescriptor& t,
                              const NeighborhoodSpec& u);

/// Structural injectivity decision; false certificates carry a concrete
/// colliding index pair.
Decision is_injective(const SequenceDescriptor& t);

struct ModifyResult {
  SequenceDescriptor seq;
  std::int64_t agreement_index = 1;  // term(seq,k) == term(t,k) for k >= this
};

/// Replace the first |new_prefix| terms and keep the tail of t bit-exact
/// (channels are advanced and rotated so the round-robin alignment is
/// preserved).
ModifyResult modify_prefix(const SequenceDescriptor& t,
                           const std::vector<FanPoint>& new_prefix);

/// Injective convergent enumeration of M (requires in_IP(M)). Prefix
/// holds chunk points and below-clear-start tail points in spoke-major,
/// depth-increasing order; one skip-free SpokeRun per tail.
SequenceDescriptor enumerate_set(const DefinableSet& m);

struct RangeResult {
  DefinableSet set;
  bool contains_apex = false;
};

/// Exact definable representation of the range minus the apex.
RangeResult range_set(const SequenceDescriptor& t);

struct DisagreementResult {
  enum class Kind { Equal, DifferAt, AgreeUpTo } kind = Kind::Equal;
  std::int64_t index = 0;
};

/// Least k <= bound with differing terms; symbolic Equal short-circuit
/// for structurally identical descriptors.
DisagreementResult first_disagreement(const SequenceDescriptor& t,
                                      const SequenceDescriptor& a,
                                      std::int64_t bound);

/// Strictly increasing index map: finitely many explicit initial values,
/// then the affine continuation slope*k + intercept.
struct IncreasingIndexMap {
  std::vector<std::int64_t> initial;
  std::int64_t slope = 1;
  std::int64_t intercept = 0;

  std::int64_t value(std::int64_t k) const {
    if (k <= static_cast<std::int64_t>(initial.size()))
      return initial[static_cast<std::size_t>(k - 1)];
    return slope * k + intercept;
  }

  bool operator==(const IncreasingIndexMap&) const = default;
};

/// T^a with term k = Node(1, a(k)); the injection evidence behind the
/// cardinality comparison.
SequenceDescriptor build_spoke_subsequence(const IncreasingIndexMap& a);

nlohmann::json to_json(const SequenceDescriptor& t);
SequenceDescriptor sequence_from_json(const nlohmann::json& j);

}  // namespace seqwit
