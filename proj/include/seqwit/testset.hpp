#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "seqwit/function.hpp"
#include "seqwit/report.hpp"
#include "seqwit/sequence.hpp"

namespace seqwit {

struct ExplicitFinite {
  std::vector<SequenceDescriptor> members;
  bool operator==(const ExplicitFinite&) const = default;
};

/// {T_j : j not excluded} plus finitely many explicit extras. The family
/// is intensional: membership and no-witness claims over it are decided
/// symbolically, never by exhaustive search.
struct CanonicalFan {
  std::set<std::int64_t> excluded;
  std::vector<SequenceDescriptor> extras;
  bool operator==(const CanonicalFan&) const = default;
};

/// A_n(a) (remove_a = false) or B_n(a) = A_n(a) \ {a} (remove_a = true):
/// sequences agreeing with the reference a on terms 1..n.
struct PrefixFamily {
  SequenceDescriptor reference;
  std::int64_t n = 1;
  bool remove_reference = false;
  bool operator==(const PrefixFamily&) const = default;
};

using TestSetDescriptor = std::variant<ExplicitFinite, CanonicalFan, PrefixFamily>;

/// Corpus of definable functions against which test-set verdicts are
/// relative; always contains the apex characteristic and the spoke
/// indicators up to the configured bound.
struct FunctionCorpus {
  std::vector<FunctionDescriptor> functions;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
};

/// Finite descending chain of test-set descriptors.
struct ChainDescriptor {
  std::vector<TestSetDescriptor> entries;
};

/// The spoke index when t is structurally a canonical sequence T_j.
std::optional<std::int64_t> canonical_spoke_of(const SequenceDescriptor& t);

bool member_of(const TestSetDescriptor& a, const SequenceDescriptor& t);

struct TestSetVerdict {
  bool pass = false;
  nlohmann::json details;
};

/// Relative test-set check: a per-function witness for every
/// discontinuous corpus member, or a symbolic no-witness certificate for
/// the failing function.
TestSetVerdict is_test_set_relative(const TestSetDescriptor& a,
                                    const FunctionCorpus& corpus);

struct FanWitness {
  std::int64_t spoke = 1;
  nlohmann::json certificate;
};

/// Least spoke whose canonical sequence witnesses f's discontinuity.
FanWitness find_fan_witness(const FunctionDescriptor& f);

/// Refute minimality of removing T_n via h = indicator(B_n).
SuiteReport minimality_refutation(std::int64_t n,
                                  const std::set<std::int64_t>& sample_spokes);

/// Nonemptiness witness for B_n(a): a with term n+1 replaced by the
/// deterministic off-point (successor depth; Node(1,1) after an apex).
SequenceDescriptor construct_Bn_witness(const SequenceDescriptor& a,
                                        std::int64_t n);

/// Witness in B_n(a) ∩ D(f): prescribed prefix of length n+1 followed by
/// the tail of the canonical witness spoke of f.
SequenceDescriptor construct_Bn_Df_witness(const SequenceDescriptor& a,
                                           std::int64_t n,
                                           const FunctionDescriptor& f);

/// Finite-stage verification of the descending B_n chain: inclusions,
/// nonemptiness, relative test-set property, and the empty-intersection
/// evidence over the probe list.
SuiteReport bad_chain_report(const SequenceDescriptor& a, std::int64_t n_max,
                             const FunctionCorpus& corpus,
                             const std::vector<SequenceDescriptor>& probes);

/// Checks that every chain entry contains the marker, that the pointwise
/// chain intersection equals the marker, and that the marker passes the
/// relative test-set check.
SuiteReport chain_intersection_check(const ChainDescriptor& chain,
                                     const TestSetDescriptor& minimal_marker,
                                     const FunctionCorpus& corpus);

/// MAD verification at finite stage: pairwise Finite(0) spokes and
/// pigeonhole maximality evidence for each corpus member of I_P.
SuiteReport mad_verify(std::int64_t spoke_bound,
                       const std::vector<DefinableSet>& ip_corpus);

/// Greedy almost-disjoint extension: scans the pool in order, adding
/// candidates almost disjoint from every current member.
std::vector<DefinableSet> greedy_ad_extend(
    const std::vector<DefinableSet>& family,
    const std::vector<DefinableSet>& pool);

nlohmann::json to_json(const TestSetDescriptor& a);
nlohmann::json to_json(const FunctionCorpus& corpus);
nlohmann::json to_json(const ChainDescriptor& chain);
TestSetDescriptor testset_from_json(const nlohmann::json& j);
FunctionCorpus corpus_from_json(const nlohmann::json& j);
ChainDescriptor chain_from_json(const nlohmann::json& j);

}  // namespace seqwit
