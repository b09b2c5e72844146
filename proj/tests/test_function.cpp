#include <doctest.h>

#include "oracles.hpp"
#include "seqwit/function.hpp"
#include "seqwit/generate.hpp"

using namespace seqwit;

TEST_CASE("eval: priority rule") {
  FunctionDescriptor h = indicator(DefinableSet::full_spoke(1));
  CHECK(eval(h, FanPoint::node(1, 3)) == Rational(1));
  CHECK(eval(h, FanPoint::node(2, 3)) == Rational(0));
  CHECK(eval(h, FanPoint::apex()) == Rational(0));

  FunctionDescriptor f = indicator(DefinableSet::full_spoke(1));
  f.point_overrides[FanPoint::node(1, 1)] = Rational(5);
  CHECK(eval(f, FanPoint::node(1, 1)) == Rational(5));

  FunctionDescriptor g;
  g.default_value = Rational(7, 3);
  g.layers.emplace_back(DefinableSet::full_spoke(4), Rational(1));
  CHECK(eval(g, FanPoint::node(2, 2)) == Rational(7, 3));
}

TEST_CASE("channel_limit_values") {
  FunctionDescriptor h = indicator(DefinableSet::full_spoke(1));
  ValuePattern constant = channel_limit_values(h, SpokeRun{1, 1, 1, {}});
  CHECK(constant.period == 1);
  CHECK(constant.values == std::vector<Rational>{Rational(1)});

  FunctionDescriptor f;
  DefinableSet odd_tail;
  odd_tail.add_tail(1, 2, 2);
  f.layers.emplace_back(odd_tail, Rational(5));
  ValuePattern p = channel_limit_values(f, SpokeRun{1, 1, 1, {}});
  CHECK(p.period == 2);
  REQUIRE(p.values.size() == 2);
  // Brute-force three periods beyond pattern_start.
  Channel ch = SpokeRun{1, 1, 1, {}};
  for (std::int64_t k = p.pattern_start; k < p.pattern_start + 6; ++k)
    CHECK(p.at(k) == eval(f, channel_term(ch, k)));

  FunctionDescriptor g;
  g.apex_value = Rational(9);
  ValuePattern q = channel_limit_values(g, ConstApex{});
  CHECK(q.values == std::vector<Rational>{Rational(9)});

  CHECK_THROWS_AS(channel_limit_values(g, ConstNode{FanPoint::node(1, 1)}),
                  Error);
}

TEST_CASE("discontinuous_at_apex") {
  Decision d = discontinuous_at_apex(apex_characteristic());
  CHECK(d.value);
  CHECK(d.certificate.at("spoke") == 1);
  CHECK(rational_from_json(d.certificate.at("epsilon")) == Rational(1));

  DefinableSet row;
  row.add_row(1, 0, 1);
  Decision dr = discontinuous_at_apex(indicator(row));
  CHECK_FALSE(dr.value);

  CHECK_FALSE(discontinuous_at_apex(constant_function(Rational(2))).value);
}

TEST_CASE("in_witness_family") {
  FunctionDescriptor h = indicator(DefinableSet::full_spoke(1));
  Decision yes = in_witness_family(h, canonical_sequence(1));
  CHECK(yes.value);
  CHECK(rational_from_json(yes.certificate.at("epsilon")) == Rational(1));

  CHECK_FALSE(in_witness_family(h, canonical_sequence(2)).value);

  CHECK_FALSE(in_witness_family(constant_function(Rational(1)),
                                canonical_sequence(5))
                  .value);

  SequenceDescriptor stuck;
  stuck.channels = {ConstNode{FanPoint::node(1, 1)}};
  CHECK_THROWS_AS(in_witness_family(h, stuck), Error);
}

TEST_CASE("witness certificates are pointwise sound") {
  Rng rng(606);
  int confirmed = 0;
  while (confirmed < 40) {
    FunctionDescriptor f = random_function(rng, 6, 32);
    SequenceDescriptor t = random_convergent_sequence(rng, 6, 32);
    Decision d = in_witness_family(f, t);
    if (!d.value) continue;
    ++confirmed;
    Rational eps = rational_from_json(d.certificate.at("epsilon"));
    std::int64_t first = d.certificate.at("indices").at("first").get<std::int64_t>();
    std::int64_t stride = d.certificate.at("indices").at("stride").get<std::int64_t>();
    Rational fp = value_at_apex(f);
    for (std::int64_t i = 0; i < 100; ++i) {
      Rational v = eval(f, term(t, first + i * stride));
      CHECK((v - fp).abs() >= eps);
    }
  }
}

TEST_CASE("discontinuity iff some canonical spoke witnesses") {
  FunctionCorpus corpus = default_corpus(6, 25, 11);
  for (const FunctionDescriptor& f : corpus.functions) {
    WitnessSpokes ws = witness_spokes(f);
    std::int64_t bound = 1;
    if (!ws.carrier_spokes.empty()) bound = *ws.carrier_spokes.rbegin() + 1;
    bool any = false;
    for (std::int64_t n = 1; n <= bound; ++n)
      if (in_witness_family(f, canonical_sequence(n)).value) {
        any = true;
        break;
      }
    CHECK(discontinuous_at_apex(f).value == any);
  }
}

TEST_CASE("continuous functions have empty witness family") {
  Rng rng(307);
  FunctionCorpus corpus = default_corpus(6, 25, 12);
  std::vector<SequenceDescriptor> seqs;
  for (int i = 0; i < 10; ++i)
    seqs.push_back(random_convergent_sequence(rng, 6, 32));
  for (const FunctionDescriptor& f : corpus.functions) {
    if (discontinuous_at_apex(f).value) continue;
    for (const auto& t : seqs) CHECK_FALSE(in_witness_family(f, t).value);
  }
}
