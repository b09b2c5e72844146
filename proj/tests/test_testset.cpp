#include <doctest.h>

#include "seqwit/generate.hpp"
#include "seqwit/testset.hpp"

using namespace seqwit;

TEST_CASE("member_of: prefix families") {
  SequenceDescriptor a = canonical_sequence(1);
  TestSetDescriptor b3{PrefixFamily{a, 3, true}};
  TestSetDescriptor a3{PrefixFamily{a, 3, false}};
  CHECK_FALSE(member_of(b3, a));
  CHECK(member_of(a3, a));
  SequenceDescriptor w = construct_Bn_witness(a, 3);
  CHECK(member_of(b3, w));
}

TEST_CASE("member_of: canonical fan and explicit lists") {
  TestSetDescriptor fan{CanonicalFan{{2}, {}}};
  CHECK(member_of(fan, canonical_sequence(1)));
  CHECK_FALSE(member_of(fan, canonical_sequence(2)));

  SequenceDescriptor extra;
  extra.prefix = {FanPoint::node(4, 4)};
  extra.channels = {SpokeRun{1, 1, 1, {}}};
  TestSetDescriptor fan2{CanonicalFan{{}, {extra}}};
  CHECK(member_of(fan2, extra));

  TestSetDescriptor fin{ExplicitFinite{{canonical_sequence(5)}}};
  CHECK(member_of(fin, canonical_sequence(5)));
  CHECK_FALSE(member_of(fin, canonical_sequence(6)));
}

TEST_CASE("is_test_set_relative") {
  FunctionCorpus corpus = default_corpus(8, 25, 3);
  CHECK(is_test_set_relative(TestSetDescriptor{CanonicalFan{}}, corpus).pass);

  TestSetVerdict v =
      is_test_set_relative(TestSetDescriptor{CanonicalFan{{3}, {}}}, corpus);
  CHECK_FALSE(v.pass);  // corpus contains the spoke-3 indicator

  FunctionCorpus continuous_only;
  continuous_only.functions = {constant_function(Rational(0)),
                               constant_function(Rational(5, 2))};
  CHECK(is_test_set_relative(TestSetDescriptor{ExplicitFinite{}},
                             continuous_only)
            .pass);  // vacuous
}

TEST_CASE("find_fan_witness") {
  FanWitness w = find_fan_witness(indicator(DefinableSet::full_spoke(7)));
  CHECK(w.spoke == 7);

  FanWitness wc = find_fan_witness(apex_characteristic());
  CHECK(wc.spoke == 1);

  CHECK_THROWS_AS(find_fan_witness(constant_function(Rational(1))), Error);
}

TEST_CASE("minimality_refutation") {
  SuiteReport r3 = minimality_refutation(3, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(r3.pass());
  CHECK(minimality_refutation(1, {1}).pass());
  CHECK(minimality_refutation(5, {5}).pass());
}

TEST_CASE("construct_Bn_witness") {
  SequenceDescriptor w = construct_Bn_witness(canonical_sequence(1), 3);
  for (std::int64_t k = 1; k <= 3; ++k)
    CHECK(term(w, k) == FanPoint::node(1, k));
  CHECK(term(w, 4) == FanPoint::node(1, 5));
  CHECK(converges_to_apex(w).value);

  SequenceDescriptor w2 = construct_Bn_witness(canonical_sequence(2), 1);
  CHECK(term(w2, 2) == FanPoint::node(2, 3));

  SequenceDescriptor stuck;
  stuck.channels = {ConstNode{FanPoint::node(1, 1)}};
  CHECK_THROWS_AS(construct_Bn_witness(stuck, 1), Error);
}

TEST_CASE("construct_Bn_Df_witness") {
  SequenceDescriptor a = canonical_sequence(1);
  FunctionDescriptor f = indicator(DefinableSet::full_spoke(2));
  SequenceDescriptor t = construct_Bn_Df_witness(a, 3, f);
  CHECK(t.prefix == std::vector<FanPoint>{FanPoint::node(1, 1),
                                          FanPoint::node(1, 2),
                                          FanPoint::node(1, 3),
                                          FanPoint::node(1, 5)});
  REQUIRE(t.channels.size() == 1);
  CHECK(std::get<SpokeRun>(t.channels[0]) == SpokeRun{2, 5, 1, {}});
  CHECK(member_of(TestSetDescriptor{PrefixFamily{a, 3, true}}, t));
  CHECK(in_witness_family(f, t).value);

  SequenceDescriptor t2 = construct_Bn_Df_witness(a, 1, apex_characteristic());
  CHECK(member_of(TestSetDescriptor{PrefixFamily{a, 1, true}}, t2));
  CHECK(in_witness_family(apex_characteristic(), t2).value);

  CHECK_THROWS_AS(construct_Bn_Df_witness(a, 1, constant_function(Rational(0))),
                  Error);
}

TEST_CASE("bad_chain_report") {
  SequenceDescriptor a = canonical_sequence(1);
  FunctionCorpus corpus = default_corpus(6, 20, 21);
  Rng rng(21);
  std::vector<SequenceDescriptor> probes;
  for (int i = 0; i < 30; ++i) probes.push_back(random_probe(rng, a, 6, 32));
  SuiteReport r = bad_chain_report(a, 4, corpus, probes);
  CHECK(r.pass());

  CHECK(bad_chain_report(a, 1, corpus, {}).pass());  // degenerate

  // The reference itself is excluded from B_1.
  SuiteReport self = bad_chain_report(a, 1, corpus, {a});
  CHECK(self.pass());
}

TEST_CASE("prefix-family monotonicity and empty intersection") {
  SequenceDescriptor a = canonical_sequence(2);
  Rng rng(88);
  for (int i = 0; i < 60; ++i) {
    SequenceDescriptor t = random_probe(rng, a, 6, 32);
    for (std::int64_t n = 1; n <= 6; ++n) {
      if (member_of(TestSetDescriptor{PrefixFamily{a, n + 1, true}}, t))
        CHECK(member_of(TestSetDescriptor{PrefixFamily{a, n, true}}, t));
    }
    DisagreementResult d = first_disagreement(t, a, 10000);
    if (d.kind == DisagreementResult::Kind::DifferAt)
      CHECK_FALSE(
          member_of(TestSetDescriptor{PrefixFamily{a, d.index, true}}, t));
  }
}

TEST_CASE("chain_intersection_check") {
  FunctionCorpus corpus = default_corpus(6, 20, 5);
  TestSetDescriptor marker{CanonicalFan{}};

  SequenceDescriptor extra;
  extra.prefix = {FanPoint::node(3, 9)};
  extra.channels = {SpokeRun{1, 1, 1, {}}};
  ChainDescriptor chain;
  chain.entries = {TestSetDescriptor{CanonicalFan{{}, {extra}}}, marker};
  CHECK(chain_intersection_check(chain, marker, corpus).pass());

  ChainDescriptor single;
  single.entries = {marker};
  CHECK(chain_intersection_check(single, marker, corpus).pass());

  ChainDescriptor without;
  without.entries = {TestSetDescriptor{CanonicalFan{{}, {extra}}}};
  CHECK_THROWS_AS(chain_intersection_check(without, marker, corpus), Error);
}

TEST_CASE("mad_verify") {
  CHECK(mad_verify(16, {DefinableSet::full_spoke(5)}).pass());

  DefinableSet row;
  row.add_row(1, 1, 0);
  CHECK_THROWS_AS(mad_verify(4, {row}), Error);
}

TEST_CASE("greedy_ad_extend") {
  DefinableSet b1 = DefinableSet::full_spoke(1);
  DefinableSet b2 = DefinableSet::full_spoke(2);
  DefinableSet b1_tail;
  b1_tail.add_tail(1, 5, 1);
  std::vector<DefinableSet> out = greedy_ad_extend({b1}, {b2, b1_tail});
  REQUIRE(out.size() == 2);
  CHECK(out[1] == b2);

  CHECK(greedy_ad_extend({}, {}).empty());
  CHECK_THROWS_AS(greedy_ad_extend({b1, b1}, {}), Error);

  // Post hoc: output pairwise almost disjoint on generated pools.
  Rng rng(55);
  std::vector<DefinableSet> pool;
  for (int i = 0; i < 30; ++i) pool.push_back(random_ip_set(rng, 8, 64));
  std::vector<DefinableSet> ext = greedy_ad_extend({b1, b2}, pool);
  for (std::size_t i = 0; i < ext.size(); ++i)
    for (std::size_t j = i + 1; j < ext.size(); ++j)
      CHECK(almost_disjoint(ext[i], ext[j]));
}

TEST_CASE("removal sensitivity over the spoke bound") {
  FunctionCorpus corpus = default_corpus(6, 20, 9);
  CHECK(is_test_set_relative(TestSetDescriptor{CanonicalFan{}}, corpus).pass);
  for (std::int64_t n = 1; n <= 6; ++n)
    CHECK_FALSE(
        is_test_set_relative(TestSetDescriptor{CanonicalFan{{n}, {}}}, corpus)
            .pass);
}
