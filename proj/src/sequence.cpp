#include "seqwit/sequence.hpp"

#include <algorithm>
#include <map>

namespace seqwit {

namespace {

std::int64_t count_skipped_upto(const std::set<std::int64_t>& skipped,
                                std::int64_t depth) {
  return static_cast<std::int64_t>(
      std::distance(skipped.begin(), skipped.upper_bound(depth)));
}

// Number of emissions of `run` with depth <= d.
std::int64_t emissions_upto(const SpokeRun& run, std::int64_t d) {
  if (d < run.start) return 0;
  std::int64_t slots = (d - run.start) / run.stride + 1;
  return slots - count_skipped_upto(run.skipped, d);
}

// Advance a channel past its first q emissions.
Channel advance_channel(const Channel& ch, std::int64_t q) {
  if (q == 0) return ch;
  if (const auto* run = std::get_if<SpokeRun>(&ch)) {
    SpokeRun out = *run;
    out.start = channel_term(ch, q + 1).depth;
    out.skipped.erase(out.skipped.begin(), out.skipped.lower_bound(out.start));
    return out;
  }
  return ch;  // constant channels are shift-invariant
}

}  // namespace

SequenceDescriptor canonical_sequence(std::int64_t spoke) {
  if (spoke < 1) throw Error(ErrorCode::InvalidDescriptor, "spoke must be >= 1");
  return SequenceDescriptor{{}, {SpokeRun{spoke, 1, 1, {}}}};
}

void validate(const SequenceDescriptor& t) {
  if (t.channels.empty())
    throw Error(ErrorCode::InvalidDescriptor, "channel list must be nonempty");
  for (const auto& ch : t.channels) {
    if (const auto* run = std::get_if<SpokeRun>(&ch)) {
      if (run->spoke < 1 || run->start < 1 || run->stride < 1)
        throw Error(ErrorCode::InvalidDescriptor, "spoke run fields must be >= 1");
      for (std::int64_t s : run->skipped) {
        if (s < run->start || (s - run->start) % run->stride != 0)
          throw Error(ErrorCode::InvalidDescriptor,
                      "skipped depth off the run progression");
      }
    } else if (const auto* cn = std::get_if<ConstNode>(&ch)) {
      if (cn->node.is_apex())
        throw Error(ErrorCode::InvalidDescriptor,
                    "ConstNode must hold a node; use ConstApex for the apex");
    }
  }
}

FanPoint channel_term(const Channel& ch, std::int64_t j) {
  if (j < 1) throw Error(ErrorCode::InvalidDescriptor, "term index must be >= 1");
  if (std::holds_alternative<ConstApex>(ch)) return FanPoint::apex();
  if (const auto* cn = std::get_if<ConstNode>(&ch)) return cn->node;
  const auto& run = std::get<SpokeRun>(ch);
  // Fixpoint on the number of skipped slots at or below the candidate.
  std::int64_t off = 0;
  for (;;) {
    std::int64_t v = run.start + (j - 1 + off) * run.stride;
    std::int64_t c = count_skipped_upto(run.skipped, v);
    if (c == off) return FanPoint::node(run.spoke, v);
    off = c;
  }
}

FanPoint term(const SequenceDescriptor& t, std::int64_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidDescriptor, "term index must be >= 1");
  std::int64_t plen = static_cast<std::int64_t>(t.prefix.size());
  if (k <= plen) return t.prefix[static_cast<std::size_t>(k - 1)];
  std::int64_t i = k - plen - 1;
  std::int64_t c = static_cast<std::int64_t>(t.channels.size());
  return channel_term(t.channels[static_cast<std::size_t>(i % c)], i / c + 1);
}

Decision converges_to_apex(const SequenceDescriptor& t) {
  validate(t);
  std::int64_t plen = static_cast<std::int64_t>(t.prefix.size());
  std::int64_t c = static_cast<std::int64_t>(t.channels.size());
  for (std::size_t ci = 0; ci < t.channels.size(); ++ci) {
    if (const auto* cn = std::get_if<ConstNode>(&t.channels[ci])) {
      NeighborhoodSpec u = excluding_neighborhood(cn->node);
      nlohmann::json cert;
      cert["kind"] = "escaping-constant-channel";
      cert["channel"] = ci;
      cert["neighborhood"] = to_json(u);
      cert["escaping_indices"] = {{"first", plen + static_cast<std::int64_t>(ci) + 1},
                                  {"stride", c}};
      return Decision{false, std::move(cert)};
    }
  }
  return Decision{true,
                  {{"kind", "all-channels-convergent"},
                   {"channels", t.channels.size()}}};
}

std::int64_t absorption_index(const SequenceDescriptor& t,
                              const NeighborhoodSpec& u) {
  if (!converges_to_apex(t).value)
    throw Error(ErrorCode::NotConvergent, "sequence does not converge to the apex");
  std::int64_t plen = static_cast<std::int64_t>(t.prefix.size());
  std::int64_t c = static_cast<std::int64_t>(t.channels.size());
  std::int64_t n = 1;
  for (std::int64_t k = 1; k <= plen; ++k)
    if (!neighborhood_contains(u, t.prefix[static_cast<std::size_t>(k - 1)]))
      n = std::max(n, k + 1);
  for (std::size_t ci = 0; ci < t.channels.size(); ++ci) {
    const auto* run = std::get_if<SpokeRun>(&t.channels[ci]);
    if (!run) continue;  // ConstApex always absorbed
    std::int64_t th = u.threshold(run->spoke);
    std::int64_t below = emissions_upto(*run, th - 1);
    std::int64_t j0 = below + 1;  // first emission at depth >= threshold
    std::int64_t global = plen + (j0 - 1) * c + static_cast<std::int64_t>(ci) + 1;
    n = std::max(n, global);
  }
  return n;
}

namespace {

nlohmann::json collision_cert(std::int64_t k1, std::int64_t k2) {
  return {{"kind", "collision"}, {"indices", {k1, k2}}};
}

}  // namespace

Decision is_injective(const SequenceDescriptor& t) {
  validate(t);
  std::int64_t plen = static_cast<std::int64_t>(t.prefix.size());
  std::int64_t c = static_cast<std::int64_t>(t.channels.size());
  auto global_index = [&](std::size_t ci, std::int64_t j) {
    return plen + (j - 1) * c + static_cast<std::int64_t>(ci) + 1;
  };

  std::map<FanPoint, std::int64_t> seen;
  for (std::int64_t k = 1; k <= plen; ++k) {
    auto [it, fresh] = seen.emplace(t.prefix[static_cast<std::size_t>(k - 1)], k);
    if (!fresh) return Decision{false, collision_cert(it->second, k)};
  }

  for (std::size_t ci = 0; ci < t.channels.size(); ++ci) {
    const Channel& ch = t.channels[ci];
    if (std::holds_alternative<ConstApex>(ch)) {
      // A constant channel repeats its value at every cycle.
      auto it = seen.find(FanPoint::apex());
      std::int64_t first = it != seen.end() ? it->second : global_index(ci, 1);
      std::int64_t second = it != seen.end() ? global_index(ci, 1) : global_index(ci, 2);
      return Decision{false, collision_cert(first, second)};
    }
    if (const auto* cn = std::get_if<ConstNode>(&ch)) {
      auto it = seen.find(cn->node);
      std::int64_t first = it != seen.end() ? it->second : global_index(ci, 1);
      std::int64_t second = it != seen.end() ? global_index(ci, 1) : global_index(ci, 2);
      return Decision{false, collision_cert(first, second)};
    }
    const auto& run = std::get<SpokeRun>(ch);
    // Prefix points landing in the run's range.
    for (std::int64_t k = 1; k <= plen; ++k) {
      const FanPoint& p = t.prefix[static_cast<std::size_t>(k - 1)];
      if (p.is_apex() || p.spoke != run.spoke) continue;
      if (p.depth >= run.start && (p.depth - run.start) % run.stride == 0 &&
          !run.skipped.count(p.depth)) {
        std::int64_t j = emissions_upto(run, p.depth);
        return Decision{false, collision_cert(k, global_index(ci, j))};
      }
    }
    // Same-spoke runs with compatible progressions share a common depth.
    for (std::size_t cj = ci + 1; cj < t.channels.size(); ++cj) {
      const auto* other = std::get_if<SpokeRun>(&t.channels[cj]);
      if (!other || other->spoke != run.spoke) continue;
      std::int64_t lo = std::max(run.start, other->start);
      // Scan the coarser progression for the first shared depth; bounded
      // because either the residues are incompatible (no hit within one
      // lcm) or a hit exists within lcm + skipped slack.
      std::int64_t lcm = run.stride / std::gcd(run.stride, other->stride) * other->stride;
      std::int64_t limit = lo + 2 * lcm +
                           (static_cast<std::int64_t>(run.skipped.size()) +
                            static_cast<std::int64_t>(other->skipped.size()) + 2) *
                               lcm;
      for (std::int64_t d = lo; d <= limit; ++d) {
        bool in_a = d >= run.start && (d - run.start) % run.stride == 0 &&
                    !run.skipped.count(d);
        bool in_b = d >= other->start && (d - other->start) % other->stride == 0 &&
                    !other->skipped.count(d);
        if (in_a && in_b) {
          return Decision{false,
                          collision_cert(global_index(ci, emissions_upto(run, d)),
                                         global_index(cj, emissions_upto(*other, d)))};
        }
      }
    }
  }
  return Decision{true, {{"kind", "structurally-injective"}}};
}

ModifyResult modify_prefix(const SequenceDescriptor& t,
                           const std::vector<FanPoint>& new_prefix) {
  validate(t);
  std::int64_t tp = static_cast<std::int64_t>(t.prefix.size());
  std::int64_t p = static_cast<std::int64_t>(new_prefix.size());
  std::int64_t l = std::max(p, tp);
  std::int64_t c = static_cast<std::int64_t>(t.channels.size());

  SequenceDescriptor s;
  s.prefix = new_prefix;
  for (std::int64_t k = p + 1; k <= l; ++k) s.prefix.push_back(term(t, k));

  std::int64_t consumed_total = l - tp;
  std::int64_t rot = consumed_total % c;
  s.channels.reserve(t.channels.size());
  for (std::int64_t i = 0; i < c; ++i) {
    std::int64_t src = (rot + i) % c;
    std::int64_t consumed = consumed_total / c + (src < rot ? 1 : 0);
    s.channels.push_back(
        advance_channel(t.channels[static_cast<std::size_t>(src)], consumed));
  }
  return ModifyResult{std::move(s), l + 1};
}

SequenceDescriptor enumerate_set(const DefinableSet& m) {
  Decision ip = in_IP(m);
  if (!ip.value)
    throw Error(ErrorCode::NotInIP, "enumerate_set requires a member of I_P");
  SequenceDescriptor t;
  for (const auto& [spoke, part] : m.spoke_components()) {
    if (const auto* chunk = std::get_if<FiniteChunk>(&part)) {
      for (std::int64_t d : chunk->depths)
        t.prefix.push_back(FanPoint::node(spoke, d));
    } else {
      const auto& tail = std::get<StridedTail>(part);
      for (std::int64_t d = tail.start; d < tail.clear_start(); d += tail.stride)
        if (!tail.excluded.count(d)) t.prefix.push_back(FanPoint::node(spoke, d));
    }
  }
  for (const auto& [spoke, part] : m.spoke_components()) {
    if (const auto* tail = std::get_if<StridedTail>(&part))
      t.channels.push_back(SpokeRun{spoke, tail->clear_start(), tail->stride, {}});
  }
  return t;
}

RangeResult range_set(const SequenceDescriptor& t) {
  validate(t);
  RangeResult out;
  for (const auto& ch : t.channels) {
    if (const auto* run = std::get_if<SpokeRun>(&ch))
      out.set.add_tail(run->spoke, run->start, run->stride, run->skipped);
    else if (std::holds_alternative<ConstApex>(ch))
      out.contains_apex = true;
  }
  for (const auto& ch : t.channels) {
    if (const auto* cn = std::get_if<ConstNode>(&ch))
      out.set.add_chunk(cn->node.spoke, {cn->node.depth});
  }
  for (const auto& p : t.prefix) {
    if (p.is_apex())
      out.contains_apex = true;
    else
      out.set.add_chunk(p.spoke, {p.depth});
  }
  return out;
}

DisagreementResult first_disagreement(const SequenceDescriptor& t,
                                      const SequenceDescriptor& a,
                                      std::int64_t bound) {
  if (bound < 1) throw Error(ErrorCode::InvalidConfig, "bound must be >= 1");
  if (t == a) return DisagreementResult{DisagreementResult::Kind::Equal, 0};
  for (std::int64_t k = 1; k <= bound; ++k)
    if (term(t, k) != term(a, k))
      return DisagreementResult{DisagreementResult::Kind::DifferAt, k};
  return DisagreementResult{DisagreementResult::Kind::AgreeUpTo, bound};
}

SequenceDescriptor build_spoke_subsequence(const IncreasingIndexMap& a) {
  if (a.slope < 1)
    throw Error(ErrorCode::NotStrictlyIncreasing, "affine slope must be >= 1");
  std::int64_t len = static_cast<std::int64_t>(a.initial.size());
  std::int64_t prev = 0;
  for (std::int64_t k = 1; k <= len + 1; ++k) {
    std::int64_t v = a.value(k);
    if (v < 1 || v <= prev)
      throw Error(ErrorCode::NotStrictlyIncreasing,
                  "index map must be strictly increasing and positive");
    prev = v;
  }
  SequenceDescriptor t;
  for (std::int64_t v : a.initial) t.prefix.push_back(FanPoint::node(1, v));
  t.channels.push_back(SpokeRun{1, a.slope * (len + 1) + a.intercept, a.slope, {}});
  return t;
}

nlohmann::json to_json(const SequenceDescriptor& t) {
  nlohmann::json prefix = nlohmann::json::array();
  for (const auto& p : t.prefix) prefix.push_back(to_json(p));
  nlohmann::json channels = nlohmann::json::array();
  for (const auto& ch : t.channels) {
    if (const auto* run = std::get_if<SpokeRun>(&ch)) {
      channels.push_back({{"run",
                           {{"spoke", run->spoke},
                            {"start", run->start},
                            {"stride", run->stride},
                            {"skip", run->skipped}}}});
    } else if (std::holds_alternative<ConstApex>(ch)) {
      channels.push_back({{"constApex", true}});
    } else {
      channels.push_back({{"constNode", to_json(std::get<ConstNode>(ch).node)}});
    }
  }
  return {{"prefix", std::move(prefix)}, {"channels", std::move(channels)}};
}

SequenceDescriptor sequence_from_json(const nlohmann::json& j) {
  try {
    SequenceDescriptor t;
    for (const auto& p : j.value("prefix", nlohmann::json::array()))
      t.prefix.push_back(fan_point_from_json(p));
    for (const auto& ch : j.at("channels")) {
      if (ch.contains("run")) {
        const auto& r = ch.at("run");
        t.channels.push_back(SpokeRun{r.at("spoke").get<std::int64_t>(),
                                      r.at("start").get<std::int64_t>(),
                                      r.at("stride").get<std::int64_t>(),
                                      r.value("skip", std::set<std::int64_t>{})});
      } else if (ch.contains("constApex")) {
        t.channels.push_back(ConstApex{});
      } else if (ch.contains("constNode")) {
        t.channels.push_back(ConstNode{fan_point_from_json(ch.at("constNode"))});
      } else {
        throw Error(ErrorCode::ParseError, "unknown channel kind");
      }
    }
    validate(t);
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("sequence: ") + e.what());
  }
}

}  // namespace seqwit
