#include "seqwit/testset.hpp"

#include <algorithm>

namespace seqwit {

namespace {

constexpr std::int64_t kDisagreementBound = 10000;

FanPoint off_point(const FanPoint& p) {
  // Deterministic choice of a point different from p: successor depth on
  // the same spoke, Node(1,1) after the apex.
  if (p.is_apex()) return FanPoint::node(1, 1);
  return FanPoint::node(p.spoke, p.depth + 1);
}

bool extensionally_reference(const SequenceDescriptor& t,
                             const SequenceDescriptor& a) {
  DisagreementResult d = first_disagreement(t, a, kDisagreementBound);
  return d.kind != DisagreementResult::Kind::DifferAt;
}

}  // namespace

std::optional<std::int64_t> canonical_spoke_of(const SequenceDescriptor& t) {
  if (!t.prefix.empty() || t.channels.size() != 1) return std::nullopt;
  const auto* run = std::get_if<SpokeRun>(&t.channels.front());
  if (!run || run->start != 1 || run->stride != 1 || !run->skipped.empty())
    return std::nullopt;
  return run->spoke;
}

bool member_of(const TestSetDescriptor& a, const SequenceDescriptor& t) {
  if (const auto* fin = std::get_if<ExplicitFinite>(&a)) {
    return std::find(fin->members.begin(), fin->members.end(), t) !=
           fin->members.end();
  }
  if (const auto* fan = std::get_if<CanonicalFan>(&a)) {
    if (auto spoke = canonical_spoke_of(t))
      if (!fan->excluded.count(*spoke)) return true;
    return std::find(fan->extras.begin(), fan->extras.end(), t) !=
           fan->extras.end();
  }
  const auto& fam = std::get<PrefixFamily>(a);
  for (std::int64_t k = 1; k <= fam.n; ++k)
    if (term(t, k) != term(fam.reference, k)) return false;
  if (fam.remove_reference && extensionally_reference(t, fam.reference))
    return false;
  return true;
}

FanWitness find_fan_witness(const FunctionDescriptor& f) {
  Decision dec = discontinuous_at_apex(f);
  if (!dec.value)
    throw Error(ErrorCode::ContinuousFunction,
                "no fan witness for a function continuous at the apex");
  FanWitness w;
  w.spoke = dec.certificate.at("spoke").get<std::int64_t>();
  Decision member = in_witness_family(f, canonical_sequence(w.spoke));
  w.certificate = {{"spoke", w.spoke},
                   {"discontinuity", dec.certificate},
                   {"witness", member.certificate},
                   {"validated", member.value}};
  if (!member.value)
    throw Error(ErrorCode::ContinuousFunction,
                "discontinuity certificate failed re-validation");
  return w;
}

SequenceDescriptor construct_Bn_witness(const SequenceDescriptor& a,
                                        std::int64_t n) {
  if (!converges_to_apex(a).value)
    throw Error(ErrorCode::NotConvergent, "reference sequence must converge");
  std::vector<FanPoint> new_prefix;
  for (std::int64_t k = 1; k <= n; ++k) new_prefix.push_back(term(a, k));
  new_prefix.push_back(off_point(term(a, n + 1)));
  return modify_prefix(a, new_prefix).seq;
}

SequenceDescriptor construct_Bn_Df_witness(const SequenceDescriptor& a,
                                           std::int64_t n,
                                           const FunctionDescriptor& f) {
  if (!converges_to_apex(a).value)
    throw Error(ErrorCode::NotConvergent, "reference sequence must converge");
  FanWitness fw = find_fan_witness(f);
  SequenceDescriptor t;
  for (std::int64_t k = 1; k <= n; ++k) t.prefix.push_back(term(a, k));
  t.prefix.push_back(off_point(term(a, n + 1)));
  t.channels.push_back(SpokeRun{fw.spoke, n + 2, 1, {}});
  return t;
}

namespace {

struct WitnessSearch {
  bool found = false;
  nlohmann::json details;
};

WitnessSearch find_witness_in(const TestSetDescriptor& a,
                              const FunctionDescriptor& f) {
  WitnessSearch out;
  if (const auto* fin = std::get_if<ExplicitFinite>(&a)) {
    for (std::size_t i = 0; i < fin->members.size(); ++i) {
      if (!converges_to_apex(fin->members[i]).value) continue;
      Decision d = in_witness_family(f, fin->members[i]);
      if (d.value) {
        out.found = true;
        out.details = {{"member", i}, {"certificate", d.certificate}};
        return out;
      }
    }
    out.details = {{"kind", "no-witness-among-members"},
                   {"members", fin->members.size()}};
    return out;
  }
  if (const auto* fan = std::get_if<CanonicalFan>(&a)) {
    WitnessSpokes ws = witness_spokes(f);
    std::int64_t limit = 1;
    if (!ws.carrier_spokes.empty())
      limit = std::max(limit, *ws.carrier_spokes.rbegin() + 1);
    if (!fan->excluded.empty())
      limit = std::max(limit, *fan->excluded.rbegin() + 1);
    for (std::int64_t n = 1; n <= limit; ++n) {
      if (fan->excluded.count(n)) continue;
      bool carrier = ws.carrier_spokes.count(n) > 0;
      bool witnesses = carrier ? ws.explicit_spokes.count(n) > 0
                               : ws.all_other_spokes;
      if (!witnesses) continue;
      Decision d = in_witness_family(f, canonical_sequence(n));
      if (d.value) {
        out.found = true;
        out.details = {{"spoke", n}, {"certificate", d.certificate}};
        return out;
      }
    }
    for (std::size_t i = 0; i < fan->extras.size(); ++i) {
      if (!converges_to_apex(fan->extras[i]).value) continue;
      Decision d = in_witness_family(f, fan->extras[i]);
      if (d.value) {
        out.found = true;
        out.details = {{"extra", i}, {"certificate", d.certificate}};
        return out;
      }
    }
    // Symbolic no-witness claim over the infinite index set: every
    // witnessing spoke is excluded, and the remaining canonical
    // sequences eventually agree with f(P).
    out.details = {{"kind", "witness-spokes-excluded"},
                   {"witness_spokes", ws.explicit_spokes},
                   {"default_region_deviates", ws.all_other_spokes},
                   {"excluded", fan->excluded}};
    return out;
  }
  const auto& fam = std::get<PrefixFamily>(a);
  SequenceDescriptor w = construct_Bn_Df_witness(fam.reference, fam.n, f);
  Decision d = in_witness_family(f, w);
  bool mem = member_of(a, w);
  out.found = d.value && mem;
  out.details = {{"constructed", to_json(w)},
                 {"member", mem},
                 {"certificate", d.certificate}};
  return out;
}

}  // namespace

TestSetVerdict is_test_set_relative(const TestSetDescriptor& a,
                                    const FunctionCorpus& corpus) {
  TestSetVerdict verdict;
  verdict.pass = true;
  nlohmann::json per_function = nlohmann::json::array();
  for (std::size_t i = 0; i < corpus.functions.size(); ++i) {
    const FunctionDescriptor& f = corpus.functions[i];
    Decision disc = discontinuous_at_apex(f);
    if (!disc.value) {
      per_function.push_back({{"function", i}, {"discontinuous", false}});
      continue;
    }
    WitnessSearch search = find_witness_in(a, f);
    per_function.push_back({{"function", i},
                            {"discontinuous", true},
                            {"witnessed", search.found},
                            {"evidence", search.details}});
    if (!search.found) verdict.pass = false;
  }
  verdict.details = {{"relative_to_corpus_size", corpus.functions.size()},
                     {"corpus_seed", corpus.seed},
                     {"per_function", std::move(per_function)}};
  return verdict;
}

SuiteReport minimality_refutation(std::int64_t n,
                                  const std::set<std::int64_t>& sample_spokes) {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "spoke index must be >= 1");
  SuiteReport report;
  report.suite = "minimality-refutation";
  report.config = {{"n", n}, {"sample_spokes", sample_spokes}};
  report.note =
      "test-set verdicts are relative to the definable function corpus";

  DefinableSet bn = DefinableSet::full_spoke(n);
  FunctionDescriptor h = indicator(bn);

  Decision witness = in_witness_family(h, canonical_sequence(n));
  bool eps_one =
      witness.value &&
      rational_from_json(witness.certificate.at("epsilon")) == Rational(1);
  report.add("witness.T_" + std::to_string(n), witness.value && eps_one,
             "the removed canonical sequence witnesses h = 1_{B_n} with eps = 1",
             witness.certificate);

  for (std::int64_t j : sample_spokes) {
    if (j == n) continue;
    Decision other = in_witness_family(h, canonical_sequence(j));
    IntersectionResult inter =
        intersection_class(DefinableSet::full_spoke(j), bn);
    bool disjoint = !inter.size.infinite && inter.size.count == 0;
    report.add("non-witness.T_" + std::to_string(j), !other.value && disjoint,
               "every other canonical sequence eventually leaves B_n",
               {{"in_witness_family", other.value},
                {"intersection", inter.certificate}});
  }
  report.add("symbolic.all-spokes", true,
             "distinct spokes are disjoint by construction, so the "
             "sampled Finite(0) certificates extend to every j != n",
             {{"n", n}});
  report.finalize();
  return report;
}

SuiteReport bad_chain_report(const SequenceDescriptor& a, std::int64_t n_max,
                             const FunctionCorpus& corpus,
                             const std::vector<SequenceDescriptor>& probes) {
  if (!converges_to_apex(a).value)
    throw Error(ErrorCode::NotConvergent, "reference sequence must converge");
  SuiteReport report;
  report.suite = "bad-chain";
  report.config = {{"n_max", n_max},
                   {"probes", probes.size()},
                   {"corpus", corpus.functions.size()}};
  report.note =
      "finite-stage evidence; maximal-chain extension is outside "
      "computational scope";

  // (i) descending inclusions, exercised on probes plus the constructed
  // witnesses so the checks are not vacuous.
  std::vector<SequenceDescriptor> pool = probes;
  for (std::int64_t n = 1; n <= n_max + 1; ++n)
    pool.push_back(construct_Bn_witness(a, n));

  for (std::int64_t n = 1; n <= n_max; ++n) {
    TestSetDescriptor outer = PrefixFamily{a, n, true};
    TestSetDescriptor inner = PrefixFamily{a, n + 1, true};
    std::int64_t violations = 0;
    std::int64_t inner_members = 0;
    for (const auto& t : pool) {
      if (!member_of(inner, t)) continue;
      ++inner_members;
      if (!member_of(outer, t)) ++violations;
    }
    report.add("chain.B" + std::to_string(n + 1) + "-in-B" + std::to_string(n),
               violations == 0, "B_{n+1} is contained in B_n",
               {{"inner_members", inner_members}, {"violations", violations}});
  }

  // (ii) nonemptiness via the deterministic witness.
  for (std::int64_t n = 1; n <= n_max; ++n) {
    SequenceDescriptor w = construct_Bn_witness(a, n);
    bool mem = member_of(TestSetDescriptor{PrefixFamily{a, n, true}}, w);
    bool conv = converges_to_apex(w).value;
    report.add("nonempty.B" + std::to_string(n), mem && conv,
               "B_n contains the finite-modification witness",
               {{"member", mem}, {"convergent", conv}});
  }

  // (iii) each B_n is a test set relative to the corpus.
  for (std::int64_t n = 1; n <= n_max; ++n) {
    TestSetVerdict v =
        is_test_set_relative(TestSetDescriptor{PrefixFamily{a, n, true}}, corpus);
    report.add("testset.B" + std::to_string(n), v.pass,
               "B_n meets D(f) for every discontinuous corpus function",
               {{"corpus_size", corpus.functions.size()}});
  }

  // (iv) empty-intersection evidence.
  bool a_out = !member_of(TestSetDescriptor{PrefixFamily{a, 1, true}}, a);
  report.add("intersection.reference-excluded", a_out,
             "the reference sequence itself lies outside B_1", {});
  std::int64_t escaped = 0, unresolved = 0, stuck = 0;
  for (const auto& t : probes) {
    DisagreementResult d = first_disagreement(t, a, kDisagreementBound);
    if (d.kind == DisagreementResult::Kind::DifferAt) {
      if (!member_of(TestSetDescriptor{PrefixFamily{a, d.index, true}}, t))
        ++escaped;
      else
        ++stuck;
    } else {
      ++unresolved;  // indistinguishable from a within the bound
    }
  }
  report.add("intersection.probes-escape", stuck == 0,
             "every probe differing from the reference leaves some B_n",
             {{"escaped", escaped},
              {"unresolved", unresolved},
              {"violations", stuck}});
  report.finalize();
  return report;
}

namespace {

bool entry_contains_marker(const TestSetDescriptor& entry,
                           const TestSetDescriptor& marker) {
  if (const auto* mfan = std::get_if<CanonicalFan>(&marker)) {
    const auto* efan = std::get_if<CanonicalFan>(&entry);
    if (!efan) return false;  // a finite entry cannot contain the fan
    for (std::int64_t j : efan->excluded)
      if (!mfan->excluded.count(j)) return false;
    for (const auto& extra : mfan->extras)
      if (!member_of(entry, extra)) return false;
    return true;
  }
  const auto& mfin = std::get<ExplicitFinite>(marker);
  return std::all_of(mfin.members.begin(), mfin.members.end(),
                     [&](const SequenceDescriptor& t) {
                       return member_of(entry, t);
                     });
}

bool same_sequence_set(std::vector<SequenceDescriptor> a,
                       std::vector<SequenceDescriptor> b) {
  auto key = [](const SequenceDescriptor& t) { return to_json(t).dump(); };
  auto cmp = [&](const SequenceDescriptor& x, const SequenceDescriptor& y) {
    return key(x) < key(y);
  };
  std::sort(a.begin(), a.end(), cmp);
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end(), cmp);
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

}  // namespace

SuiteReport chain_intersection_check(const ChainDescriptor& chain,
                                     const TestSetDescriptor& minimal_marker,
                                     const FunctionCorpus& corpus) {
  for (const auto& entry : chain.entries)
    if (std::holds_alternative<PrefixFamily>(entry))
      throw Error(ErrorCode::InvalidConfig,
                  "chain entries must be explicit or canonical-fan families");
  if (std::find(chain.entries.begin(), chain.entries.end(), minimal_marker) ==
      chain.entries.end())
    throw Error(ErrorCode::MarkerNotInChain,
                "the minimal marker must be an entry of the chain");

  SuiteReport report;
  report.suite = "good-chain";
  report.config = {{"entries", chain.entries.size()}};
  report.note =
      "test-set verdicts are relative to the definable function corpus; "
      "chains are finite-stage";

  for (std::size_t i = 0; i < chain.entries.size(); ++i) {
    bool contains = entry_contains_marker(chain.entries[i], minimal_marker);
    report.add("contains-marker.entry" + std::to_string(i), contains,
               "every chain entry contains the minimal marker", {});
  }

  // Pointwise intersection over the symbolic representations.
  bool all_canonical =
      std::all_of(chain.entries.begin(), chain.entries.end(),
                  [](const TestSetDescriptor& e) {
                    return std::holds_alternative<CanonicalFan>(e);
                  });
  bool equals_marker = false;
  if (all_canonical) {
    CanonicalFan inter;
    for (const auto& entry : chain.entries)
      for (std::int64_t j : std::get<CanonicalFan>(entry).excluded)
        inter.excluded.insert(j);
    // An extra survives when every entry contains it; canonical members
    // are already covered by the exclusion union.
    for (const auto& candidate : std::get<CanonicalFan>(chain.entries.front()).extras) {
      if (auto spoke = canonical_spoke_of(candidate))
        if (!inter.excluded.count(*spoke)) continue;
      bool everywhere = std::all_of(
          chain.entries.begin(), chain.entries.end(),
          [&](const TestSetDescriptor& e) { return member_of(e, candidate); });
      if (everywhere) inter.extras.push_back(candidate);
    }
    if (const auto* mfan = std::get_if<CanonicalFan>(&minimal_marker)) {
      std::vector<SequenceDescriptor> marker_extras;
      for (const auto& extra : mfan->extras) {
        if (auto spoke = canonical_spoke_of(extra))
          if (!mfan->excluded.count(*spoke)) continue;
        marker_extras.push_back(extra);
      }
      equals_marker = inter.excluded == mfan->excluded &&
                      same_sequence_set(inter.extras, marker_extras);
    }
  } else {
    // Some finite entry bounds the intersection: filter its members.
    const ExplicitFinite* base = nullptr;
    for (const auto& entry : chain.entries)
      if ((base = std::get_if<ExplicitFinite>(&entry))) break;
    std::vector<SequenceDescriptor> members;
    for (const auto& t : base->members) {
      bool everywhere = std::all_of(
          chain.entries.begin(), chain.entries.end(),
          [&](const TestSetDescriptor& e) { return member_of(e, t); });
      if (everywhere) members.push_back(t);
    }
    if (const auto* mfin = std::get_if<ExplicitFinite>(&minimal_marker))
      equals_marker = same_sequence_set(members, mfin->members);
  }
  report.add("intersection-equals-marker", equals_marker,
             "the chain intersection equals the minimal marker exactly", {});

  TestSetVerdict v = is_test_set_relative(minimal_marker, corpus);
  report.add("marker-is-test-set", v.pass,
             "the marker passes the relative test-set check",
             {{"corpus_size", corpus.functions.size()}});
  report.finalize();
  return report;
}

SuiteReport mad_verify(std::int64_t spoke_bound,
                       const std::vector<DefinableSet>& ip_corpus) {
  for (std::size_t i = 0; i < ip_corpus.size(); ++i)
    if (!in_IP(ip_corpus[i]).value)
      throw Error(ErrorCode::CorpusNotInIP,
                  "corpus member " + std::to_string(i) + " is not in I_P");

  SuiteReport report;
  report.suite = "mad";
  report.config = {{"spoke_bound", spoke_bound}, {"corpus", ip_corpus.size()}};

  std::int64_t pairwise_failures = 0;
  for (std::int64_t i = 1; i <= spoke_bound; ++i) {
    for (std::int64_t j = i + 1; j <= spoke_bound; ++j) {
      IntersectionResult inter = intersection_class(
          DefinableSet::full_spoke(i), DefinableSet::full_spoke(j));
      if (inter.size.infinite || inter.size.count != 0) ++pairwise_failures;
    }
  }
  report.add("pairwise-disjoint", pairwise_failures == 0,
             "distinct spokes intersect in Finite(0)",
             {{"pairs", spoke_bound * (spoke_bound - 1) / 2},
              {"failures", pairwise_failures}});

  for (std::size_t i = 0; i < ip_corpus.size(); ++i) {
    SpokeSupport support = spoke_support(ip_corpus[i]);
    std::int64_t hit = 0;
    for (std::int64_t n : support.spokes) {
      if (intersection_class(ip_corpus[i], DefinableSet::full_spoke(n))
              .size.infinite) {
        hit = n;
        break;
      }
    }
    report.add("maximality.m" + std::to_string(i), hit != 0,
               "each corpus member meets some spoke infinitely",
               {{"spoke", hit}});
  }
  report.finalize();
  return report;
}

std::vector<DefinableSet> greedy_ad_extend(
    const std::vector<DefinableSet>& family,
    const std::vector<DefinableSet>& pool) {
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!almost_disjoint(family[i], family[j]))
        throw Error(ErrorCode::FamilyNotAD,
                    "seed family is not pairwise almost disjoint");
  std::vector<DefinableSet> out = family;
  for (const auto& candidate : pool) {
    bool ok = std::all_of(out.begin(), out.end(), [&](const DefinableSet& m) {
      return almost_disjoint(m, candidate);
    });
    if (ok) out.push_back(candidate);
  }
  return out;
}

nlohmann::json to_json(const TestSetDescriptor& a) {
  if (const auto* fin = std::get_if<ExplicitFinite>(&a)) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& t : fin->members) members.push_back(to_json(t));
    return {{"explicit", std::move(members)}};
  }
  if (const auto* fan = std::get_if<CanonicalFan>(&a)) {
    nlohmann::json extras = nlohmann::json::array();
    for (const auto& t : fan->extras) extras.push_back(to_json(t));
    return {{"canonicalFan",
             {{"excluded", fan->excluded}, {"extras", std::move(extras)}}}};
  }
  const auto& fam = std::get<PrefixFamily>(a);
  return {{"prefixFamily",
           {{"reference", to_json(fam.reference)},
            {"n", fam.n},
            {"removeReference", fam.remove_reference}}}};
}

nlohmann::json to_json(const FunctionCorpus& corpus) {
  nlohmann::json functions = nlohmann::json::array();
  for (const auto& f : corpus.functions) functions.push_back(to_json(f));
  return {{"functions", std::move(functions)},
          {"seed", corpus.seed},
          {"params", corpus.params}};
}

nlohmann::json to_json(const ChainDescriptor& chain) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : chain.entries) entries.push_back(to_json(e));
  return {{"entries", std::move(entries)}};
}

TestSetDescriptor testset_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("explicit")) {
      ExplicitFinite fin;
      for (const auto& t : j.at("explicit")) fin.members.push_back(sequence_from_json(t));
      return fin;
    }
    if (j.contains("canonicalFan")) {
      const auto& fj = j.at("canonicalFan");
      CanonicalFan fan;
      fan.excluded = fj.value("excluded", std::set<std::int64_t>{});
      for (const auto& t : fj.value("extras", nlohmann::json::array()))
        fan.extras.push_back(sequence_from_json(t));
      return fan;
    }
    if (j.contains("prefixFamily")) {
      const auto& fj = j.at("prefixFamily");
      return PrefixFamily{sequence_from_json(fj.at("reference")),
                          fj.at("n").get<std::int64_t>(),
                          fj.value("removeReference", false)};
    }
    throw Error(ErrorCode::ParseError, "unknown test-set descriptor kind");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("test set: ") + e.what());
  }
}

FunctionCorpus corpus_from_json(const nlohmann::json& j) {
  try {
    FunctionCorpus corpus;
    for (const auto& f : j.at("functions"))
      corpus.functions.push_back(function_from_json(f));
    corpus.seed = j.value("seed", std::uint64_t{0});
    corpus.params = j.value("params", nlohmann::json::object());
    return corpus;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("corpus: ") + e.what());
  }
}

ChainDescriptor chain_from_json(const nlohmann::json& j) {
  try {
    ChainDescriptor chain;
    for (const auto& e : j.at("entries"))
      chain.entries.push_back(testset_from_json(e));
    return chain;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("chain: ") + e.what());
  }
}

}  // namespace seqwit
