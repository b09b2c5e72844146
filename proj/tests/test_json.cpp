#include <doctest.h>

#include "seqwit/generate.hpp"
#include "seqwit/suites.hpp"
#include "seqwit/testset.hpp"

using namespace seqwit;

TEST_CASE("fan point and neighborhood round-trips") {
  FanPoint apex = FanPoint::apex();
  CHECK(fan_point_from_json(to_json(apex)) == apex);
  FanPoint node = FanPoint::node(3, 14);
  CHECK(fan_point_from_json(to_json(node)) == node);
  CHECK(to_json(apex).at("apex") == true);
  CHECK(to_json(node).at("spoke") == 3);

  NeighborhoodSpec u(2, {{1, 5}, {7, 9}});
  CHECK(neighborhood_from_json(to_json(u)) == u);
}

TEST_CASE("descriptor round-trips over generated values") {
  Rng rng(4242);
  for (int i = 0; i < 60; ++i) {
    DefinableSet m = random_definable_set(rng, 8, 64);
    CHECK(definable_set_from_json(to_json(m)) == m);

    SequenceDescriptor t = random_convergent_sequence(rng, 8, 64);
    CHECK(sequence_from_json(to_json(t)) == t);

    FunctionDescriptor f = random_function(rng, 8, 64);
    CHECK(function_from_json(to_json(f)) == f);
  }
}

TEST_CASE("test-set, corpus, and chain round-trips") {
  SequenceDescriptor a = canonical_sequence(1);
  std::vector<TestSetDescriptor> sets = {
      TestSetDescriptor{ExplicitFinite{{a, canonical_sequence(2)}}},
      TestSetDescriptor{CanonicalFan{{1, 4}, {a}}},
      TestSetDescriptor{PrefixFamily{a, 3, true}},
  };
  for (const auto& s : sets) CHECK(testset_from_json(to_json(s)) == s);

  FunctionCorpus corpus = default_corpus(4, 10, 77);
  FunctionCorpus back = corpus_from_json(to_json(corpus));
  CHECK(back.functions == corpus.functions);
  CHECK(back.seed == corpus.seed);

  ChainDescriptor chain;
  chain.entries = sets;
  ChainDescriptor chain_back = chain_from_json(to_json(chain));
  REQUIRE(chain_back.entries.size() == sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    CHECK(chain_back.entries[i] == sets[i]);
}

TEST_CASE("malformed descriptors raise ParseError") {
  CHECK_THROWS_AS(sequence_from_json(nlohmann::json{{"bogus", 1}}), Error);
  CHECK_THROWS_AS(testset_from_json(nlohmann::json{{"bogus", 1}}), Error);
  CHECK_THROWS_AS(fan_point_from_json(nlohmann::json{{"spoke", 1}}), Error);
}

TEST_CASE("reports carry schema, verdict, seed, and config echo") {
  SuiteConfig config;
  config.suite = "mad";
  config.seed = 31337;
  SuiteReport report = run_suite(config);
  nlohmann::json j = report.to_json();
  CHECK(j.at("schema") == "seqwit/1");
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("seed") == 31337);
  CHECK(j.at("config").at("max_spoke") == config.max_spoke);

  std::string md = report.to_markdown();
  CHECK(md.find("pass") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical reports") {
  for (const std::string& name : {"mad", "cardinality-evidence", "kernel"}) {
    SuiteConfig config;
    config.suite = name;
    config.max_spoke = 6;
    config.max_depth = 64;
    config.probes = 20;
    config.seed = 9;
    CHECK(run_suite(config).to_json().dump() ==
          run_suite(config).to_json().dump());
  }
}
