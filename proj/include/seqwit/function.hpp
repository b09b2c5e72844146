#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seqwit/definable_set.hpp"
#include "seqwit/rational.hpp"
#include "seqwit/sequence.hpp"

namespace seqwit {

/// Rational-valued priority-layer function on the fan. Evaluation order:
/// point overrides, then the first matching layer, then the default;
/// the apex evaluates to apex_value unless overridden.
struct FunctionDescriptor {
  Rational apex_value;
  Rational default_value;
  std::map<FanPoint, Rational> point_overrides;
  std::vector<std::pair<DefinableSet, Rational>> layers;

  bool operator==(const FunctionDescriptor&) const = default;
};

/// Indicator of a definable set (1 on the set, 0 elsewhere, 0 at apex).
FunctionDescriptor indicator(const DefinableSet& m);

/// Characteristic function of {P}: 1 at the apex, 0 elsewhere.
FunctionDescriptor apex_characteristic();

FunctionDescriptor constant_function(const Rational& value);

Rational eval(const FunctionDescriptor& f, const FanPoint& x);

/// f(P), honoring a point override at the apex.
Rational value_at_apex(const FunctionDescriptor& f);

/// Eventually periodic value pattern of k -> eval(f, ch(k)) along a
/// SpokeRun or ConstApex channel. For occurrence index k >= pattern_start
/// the value is values[(k - pattern_start) % period].
struct ValuePattern {
  std::int64_t pattern_start = 1;
  std::int64_t period = 1;
  std::vector<Rational> values;

  const Rational& at(std::int64_t k) const {
    return values[static_cast<std::size_t>((k - pattern_start) % period)];
  }
};

ValuePattern channel_limit_values(const FunctionDescriptor& f,
                                  const Channel& ch);

/// Decidable discontinuity at the apex: true iff some deviating level
/// set accumulates there. True certificate: (spoke, epsilon, residue
/// class of depths). False certificate: per-spoke eventual agreement
/// plus a separating cover.
Decision discontinuous_at_apex(const FunctionDescriptor& f);

/// Witness spokes of f: the canonical T_n witnessing f's discontinuity.
/// `all_other_spokes` set means every spoke outside `carrier_spokes`
/// witnesses too (the default region already deviates from f(P)).
struct WitnessSpokes {
  std::set<std::int64_t> explicit_spokes;  // deviating carrier spokes
  bool all_other_spokes = false;
  std::set<std::int64_t> carrier_spokes;  // spokes with layer components
};

WitnessSpokes witness_spokes(const FunctionDescriptor& f);

/// T in D(f): some channel's value pattern deviates from f(P)
/// periodically. Certificate: (channel index, epsilon, arithmetic
/// progression of witnessing global indices). Throws NotInSP when T does
/// not converge to the apex.
Decision in_witness_family(const FunctionDescriptor& f,
                           const SequenceDescriptor& t);

nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const FunctionDescriptor& f);
Rational rational_from_json(const nlohmann::json& j);
FunctionDescriptor function_from_json(const nlohmann::json& j);

}  // namespace seqwit
