#include "seqwit/function.hpp"

#include <algorithm>
#include <numeric>

namespace seqwit {

FunctionDescriptor indicator(const DefinableSet& m) {
  FunctionDescriptor f;
  f.apex_value = Rational(0);
  f.default_value = Rational(0);
  f.layers.emplace_back(m, Rational(1));
  return f;
}

FunctionDescriptor apex_characteristic() {
  FunctionDescriptor f;
  f.apex_value = Rational(1);
  f.default_value = Rational(0);
  return f;
}

FunctionDescriptor constant_function(const Rational& value) {
  FunctionDescriptor f;
  f.apex_value = value;
  f.default_value = value;
  return f;
}

Rational eval(const FunctionDescriptor& f, const FanPoint& x) {
  auto it = f.point_overrides.find(x);
  if (it != f.point_overrides.end()) return it->second;
  if (x.is_apex()) return f.apex_value;
  for (const auto& [set, value] : f.layers)
    if (member(set, x)) return value;
  return f.default_value;
}

Rational value_at_apex(const FunctionDescriptor& f) {
  return eval(f, FanPoint::apex());
}

namespace {

// Depth below which the value along the spoke may be irregular: beyond
// it only the tail progressions (period lcm of their strides) decide.
struct SpokeProfile {
  std::int64_t irregular_until = 0;  // depths <= this are irregular
  std::int64_t period = 1;           // lcm of tail strides on the spoke
};

SpokeProfile spoke_profile(const FunctionDescriptor& f, std::int64_t spoke) {
  SpokeProfile prof;
  for (const auto& [x, v] : f.point_overrides)
    if (!x.is_apex() && x.spoke == spoke)
      prof.irregular_until = std::max(prof.irregular_until, x.depth);
  for (const auto& [set, value] : f.layers) {
    auto it = set.spoke_components().find(spoke);
    if (it != set.spoke_components().end()) {
      if (const auto* chunk = std::get_if<FiniteChunk>(&it->second)) {
        prof.irregular_until =
            std::max(prof.irregular_until, *chunk->depths.rbegin());
      } else {
        const auto& tail = std::get<StridedTail>(it->second);
        prof.irregular_until =
            std::max(prof.irregular_until, tail.clear_start() - 1);
        prof.period = std::lcm(prof.period, tail.stride);
      }
    }
    for (const auto& row : set.row_components())
      if (spoke >= row.start_spoke)
        prof.irregular_until = std::max(prof.irregular_until, row.depth_at(spoke));
  }
  return prof;
}

}  // namespace

ValuePattern channel_limit_values(const FunctionDescriptor& f,
                                  const Channel& ch) {
  if (std::holds_alternative<ConstApex>(ch))
    return ValuePattern{1, 1, {value_at_apex(f)}};
  if (std::holds_alternative<ConstNode>(ch))
    throw Error(ErrorCode::UnsupportedChannel,
                "ConstNode channels are constant; evaluate the node directly");
  const auto& run = std::get<SpokeRun>(ch);
  SpokeProfile prof = spoke_profile(f, run.spoke);
  std::int64_t skip_bound =
      run.skipped.empty() ? 0 : *run.skipped.rbegin();
  std::int64_t bound = std::max(prof.irregular_until, skip_bound);

  std::int64_t j = 1;
  while (channel_term(ch, j).depth <= bound) ++j;

  ValuePattern pattern;
  pattern.pattern_start = j;
  pattern.period = prof.period / std::gcd(prof.period, run.stride);
  pattern.values.reserve(static_cast<std::size_t>(pattern.period));
  for (std::int64_t i = 0; i < pattern.period; ++i)
    pattern.values.push_back(eval(f, channel_term(ch, j + i)));
  return pattern;
}

WitnessSpokes witness_spokes(const FunctionDescriptor& f) {
  WitnessSpokes ws;
  Rational fp = value_at_apex(f);
  for (const auto& [set, value] : f.layers)
    for (const auto& [spoke, part] : set.spoke_components())
      ws.carrier_spokes.insert(spoke);
  for (std::int64_t spoke : ws.carrier_spokes) {
    ValuePattern pattern =
        channel_limit_values(f, SpokeRun{spoke, 1, 1, {}});
    for (const auto& v : pattern.values)
      if (v != fp) {
        ws.explicit_spokes.insert(spoke);
        break;
      }
  }
  ws.all_other_spokes = f.default_value != fp;
  return ws;
}

Decision discontinuous_at_apex(const FunctionDescriptor& f) {
  Rational fp = value_at_apex(f);
  WitnessSpokes ws = witness_spokes(f);

  bool witnessed = !ws.explicit_spokes.empty() || ws.all_other_spokes;
  if (witnessed) {
    // Least witnessing spoke: scan upward; non-carrier spokes witness
    // exactly when the default region deviates.
    std::int64_t spoke = 0;
    std::int64_t limit = ws.carrier_spokes.empty()
                             ? 1
                             : *ws.carrier_spokes.rbegin() + 1;
    for (std::int64_t n = 1; n <= limit; ++n) {
      bool carrier = ws.carrier_spokes.count(n) > 0;
      if ((carrier && ws.explicit_spokes.count(n)) ||
          (!carrier && ws.all_other_spokes)) {
        spoke = n;
        break;
      }
    }
    if (spoke == 0) spoke = *ws.explicit_spokes.begin();
    ValuePattern pattern = channel_limit_values(f, SpokeRun{spoke, 1, 1, {}});
    for (std::int64_t i = 0; i < pattern.period; ++i) {
      const Rational& v =
          pattern.values[static_cast<std::size_t>(i)];
      if (v == fp) continue;
      Rational eps = (v - fp).abs();
      nlohmann::json cert;
      cert["kind"] = "accumulating-deviation";
      cert["spoke"] = spoke;
      cert["epsilon"] = to_json(eps);
      cert["residue"] = {{"first", pattern.pattern_start + i},
                         {"stride", pattern.period}};
      return Decision{true, std::move(cert)};
    }
  }

  // Continuous at the apex: emit a separating cover (inside it every
  // value equals f(P)).
  ThresholdCover cover;
  nlohmann::json spokes = nlohmann::json::array();
  for (std::int64_t n : ws.carrier_spokes) {
    ValuePattern pattern = channel_limit_values(f, SpokeRun{n, 1, 1, {}});
    cover.overrides[n] = pattern.pattern_start;  // stride-1 run: depth == index
    spokes.push_back({{"spoke", n}, {"agrees_from", pattern.pattern_start}});
  }
  for (const auto& [x, v] : f.point_overrides) {
    if (x.is_apex() || v == fp) continue;
    auto [it, fresh] = cover.overrides.emplace(x.spoke, x.depth + 1);
    if (!fresh) it->second = std::max(it->second, x.depth + 1);
  }
  for (const auto& [set, value] : f.layers) {
    if (value == fp) continue;
    for (const auto& row : set.row_components()) {
      cover.slope = std::max(cover.slope, row.slope);
      cover.intercept = std::max(cover.intercept, row.intercept + 1);
    }
  }
  nlohmann::json cert;
  cert["kind"] = "eventually-agrees";
  cert["cover"] = cover.to_json();
  cert["spokes"] = std::move(spokes);
  return Decision{false, std::move(cert)};
}

Decision in_witness_family(const FunctionDescriptor& f,
                           const SequenceDescriptor& t) {
  Decision conv = converges_to_apex(t);
  if (!conv.value)
    throw Error(ErrorCode::NotInSP, "sequence does not converge to the apex");
  Rational fp = value_at_apex(f);
  std::int64_t plen = static_cast<std::int64_t>(t.prefix.size());
  std::int64_t c = static_cast<std::int64_t>(t.channels.size());

  nlohmann::json agreement = nlohmann::json::array();
  for (std::size_t ci = 0; ci < t.channels.size(); ++ci) {
    ValuePattern pattern = channel_limit_values(f, t.channels[ci]);
    for (std::int64_t i = 0; i < pattern.period; ++i) {
      const Rational& v = pattern.values[static_cast<std::size_t>(i)];
      if (v == fp) continue;
      Rational eps = (v - fp).abs();
      std::int64_t occurrence = pattern.pattern_start + i;
      nlohmann::json cert;
      cert["kind"] = "recurring-deviation";
      cert["channel"] = ci;
      cert["epsilon"] = to_json(eps);
      cert["indices"] = {
          {"first", plen + (occurrence - 1) * c + static_cast<std::int64_t>(ci) + 1},
          {"stride", pattern.period * c}};
      return Decision{true, std::move(cert)};
    }
    agreement.push_back({{"channel", ci},
                         {"agrees_from_occurrence", pattern.pattern_start}});
  }
  return Decision{false,
                  {{"kind", "eventual-agreement"}, {"channels", agreement}}};
}

nlohmann::json to_json(const Rational& q) {
  return {{"num", q.num()}, {"den", q.den()}};
}

nlohmann::json to_json(const FunctionDescriptor& f) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& [set, value] : f.layers)
    layers.push_back({{"set", to_json(set)}, {"value", to_json(value)}});
  nlohmann::json overrides = nlohmann::json::array();
  for (const auto& [point, value] : f.point_overrides)
    overrides.push_back({{"point", to_json(point)}, {"value", to_json(value)}});
  return {{"apex", to_json(f.apex_value)},
          {"default", to_json(f.default_value)},
          {"layers", std::move(layers)},
          {"overrides", std::move(overrides)}};
}

Rational rational_from_json(const nlohmann::json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    return Rational(j.at("num").get<std::int64_t>(),
                    j.at("den").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("rational: ") + e.what());
  }
}

FunctionDescriptor function_from_json(const nlohmann::json& j) {
  try {
    FunctionDescriptor f;
    f.apex_value = rational_from_json(j.at("apex"));
    f.default_value = rational_from_json(j.at("default"));
    for (const auto& layer : j.value("layers", nlohmann::json::array()))
      f.layers.emplace_back(definable_set_from_json(layer.at("set")),
                            rational_from_json(layer.at("value")));
    for (const auto& ov : j.value("overrides", nlohmann::json::array()))
      f.point_overrides[fan_point_from_json(ov.at("point"))] =
          rational_from_json(ov.at("value"));
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("function: ") + e.what());
  }
}

}  // namespace seqwit
