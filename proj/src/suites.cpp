#include "seqwit/suites.hpp"

#include <cmath>
#include <numbers>

#include "seqwit/generate.hpp"
#include "seqwit/realline.hpp"
#include "seqwit/testset.hpp"

namespace seqwit {

namespace {

nlohmann::json config_json(const SuiteConfig& c) {
  return {{"suite", c.suite},
          {"max_spoke", c.max_spoke},
          {"max_depth", c.max_depth},
          {"probes", c.probes},
          {"seed", c.seed},
          {"realline_tol", c.realline_tol}};
}

void validate(const SuiteConfig& c) {
  if (c.max_spoke < 1 || c.max_depth < 1 || c.probes < 1)
    throw Error(ErrorCode::InvalidConfig, "bounds and probe count must be >= 1");
  if (c.format != "json" && c.format != "markdown")
    throw Error(ErrorCode::InvalidConfig, "format must be json or markdown");
}

SuiteReport run_kernel(const SuiteConfig& c) {
  SuiteReport report = kernel_certificate(c.max_spoke, c.max_depth);
  report.config = config_json(c);
  report.seed = c.seed;
  return report;
}

SuiteReport run_finite_modification(const SuiteConfig& c) {
  SuiteReport report;
  report.suite = c.suite;
  report.seed = c.seed;
  report.config = config_json(c);
  Rng rng(c.seed);
  std::int64_t conv_failures = 0, witness_failures = 0, nonconvergent = 0;
  for (std::int64_t i = 0; i < c.probes; ++i) {
    SequenceDescriptor t = random_convergent_sequence(rng, c.max_spoke, 64);
    bool spoil = std::uniform_real_distribution<double>(0, 1)(rng) < 0.25;
    if (spoil)
      t.channels.push_back(ConstNode{
          FanPoint::node(std::uniform_int_distribution<std::int64_t>(
                             1, c.max_spoke)(rng),
                         1)});
    std::vector<FanPoint> prefix = random_prefix(rng, c.max_spoke, 64, 6);
    FunctionDescriptor f = random_function(rng, c.max_spoke, 64);
    SequenceDescriptor s = modify_prefix(t, prefix).seq;

    bool conv_t = converges_to_apex(t).value;
    bool conv_s = converges_to_apex(s).value;
    if (conv_t != conv_s) ++conv_failures;
    if (!conv_t) {
      ++nonconvergent;
      continue;
    }
    if (in_witness_family(f, t).value != in_witness_family(f, s).value)
      ++witness_failures;
  }
  report.add("modification.convergence", conv_failures == 0,
             "finite modification never changes convergence to the apex",
             {{"triples", c.probes}, {"failures", conv_failures}});
  report.add("modification.witness-family", witness_failures == 0,
             "finite modification never changes membership in D(f)",
             {{"triples", c.probes - nonconvergent},
              {"failures", witness_failures}});
  report.finalize();
  return report;
}

SuiteReport run_prefix_chain(const SuiteConfig& c, std::int64_t n_max,
                             bool canonical_reference) {
  Rng rng(c.seed);
  SequenceDescriptor a = canonical_reference
                             ? canonical_sequence(1)
                             : random_convergent_sequence(rng, c.max_spoke, 64);
  FunctionCorpus corpus = default_corpus(c.max_spoke, 40, c.seed);
  std::vector<SequenceDescriptor> probes;
  for (std::int64_t i = 0; i < c.probes; ++i)
    probes.push_back(random_probe(rng, a, c.max_spoke, 64));
  SuiteReport report = bad_chain_report(a, n_max, corpus, probes);
  report.suite = c.suite;
  report.seed = c.seed;
  report.config = config_json(c);
  report.config["n_max"] = n_max;
  report.config["reference"] = to_json(a);
  return report;
}

SuiteReport run_ip_characterization(const SuiteConfig& c) {
  SuiteReport report;
  report.suite = c.suite;
  report.seed = c.seed;
  report.config = config_json(c);
  Rng rng(c.seed);
  std::int64_t quarter = std::max<std::int64_t>(c.probes / 4, 1);
  std::int64_t failures = 0, rows = 0, finites = 0, positives = 0;
  for (std::int64_t i = 0; i < c.probes; ++i) {
    DefinableSet m;
    if (i < quarter) {
      m = random_row_set(rng, 32, c.max_depth);
    } else if (i < 2 * quarter) {
      m = random_finite_set(rng, 32, c.max_depth);
    } else {
      m = random_definable_set(rng, 32, c.max_depth);
    }
    if (!m.row_components().empty()) ++rows;
    if (!cardinality_class(m).infinite) ++finites;

    Decision dec = in_IP(m);
    bool ok = true;
    const std::string kind = dec.certificate.at("kind");
    if (dec.value) {
      ++positives;
      // Containment in the named spokes and genuine infiniteness.
      SpokeSupport support = spoke_support(m);
      ok = !support.unbounded_rows && cardinality_class(m).infinite &&
           dec.certificate.at("spokes").size() == support.spokes.size();
    } else if (kind == "finite") {
      ok = !cardinality_class(m).infinite;
    } else {
      // Escaping family: 100 row points must lie in m yet outside the
      // cover neighborhood.
      ThresholdCover cover;
      const auto& cj = dec.certificate.at("cover");
      cover.base = cj.value("default", std::int64_t{1});
      if (cj.contains("affine")) {
        cover.slope = cj.at("affine").at("slope").get<std::int64_t>();
        cover.intercept = cj.at("affine").at("intercept").get<std::int64_t>();
      }
      const auto& rj = dec.certificate.at("escape").at("row");
      RowComponent row{rj.at("from").get<std::int64_t>(),
                       rj.at("slope").get<std::int64_t>(),
                       rj.at("intercept").get<std::int64_t>()};
      for (std::int64_t s = row.start_spoke; s < row.start_spoke + 100; ++s) {
        FanPoint p = FanPoint::node(s, row.depth_at(s));
        if (!member(m, p) || cover.contains(p)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) ++failures;
  }
  report.add("ip.decisions", failures == 0,
             "I_P membership decisions carry valid certificates",
             {{"sets", c.probes},
              {"row_sets", rows},
              {"finite_sets", finites},
              {"in_ip", positives},
              {"failures", failures}});
  report.finalize();
  return report;
}

SuiteReport run_mad(const SuiteConfig& c) {
  Rng rng(c.seed);
  std::vector<DefinableSet> corpus;
  while (corpus.size() < 50) {
    DefinableSet m = random_ip_set(rng, c.max_spoke, 64);
    if (in_IP(m).value) corpus.push_back(std::move(m));
  }
  SuiteReport report = mad_verify(c.max_spoke, corpus);
  report.suite = c.suite;
  report.seed = c.seed;
  report.config = config_json(c);
  return report;
}

SuiteReport run_amin_testset(const SuiteConfig& c) {
  SuiteReport report;
  report.suite = c.suite;
  report.seed = c.seed;
  report.config = config_json(c);
  report.note =
      "test-set verdicts are relative to the definable function corpus";
  FunctionCorpus corpus = default_corpus(c.max_spoke, 40, c.seed);
  std::int64_t discontinuous = 0, witness_failures = 0;
  for (const auto& f : corpus.functions) {
    if (!discontinuous_at_apex(f).value) continue;
    ++discontinuous;
    try {
      find_fan_witness(f);
    } catch (const Error&) {
      ++witness_failures;
    }
  }
  report.add("amin.fan-witnesses", witness_failures == 0,
             "every discontinuous corpus function has a validated "
             "canonical-sequence witness",
             {{"discontinuous", discontinuous},
              {"failures", witness_failures}});
  TestSetVerdict v =
      is_test_set_relative(TestSetDescriptor{CanonicalFan{}}, corpus);
  report.add("amin.test-set", v.pass,
             "the canonical family meets D(f) for every discontinuous "
             "corpus function",
             {{"corpus_size", corpus.functions.size()}});
  report.finalize();
  return report;
}

SuiteReport run_minimality(const SuiteConfig& c) {
  SuiteReport report;
  report.suite = c.suite;
  report.seed = c.seed;
  report.config = config_json(c);
  std::set<std::int64_t> sample;
  for (std::int64_t j = 1; j <= c.max_spoke; ++j) sample.insert(j);
  for (std::int64_t n = 1; n <= c.max_spoke; ++n) {
    SuiteReport sub = minimality_refutation(n, sample);
    report.note = sub.note;
    report.add("n" + std::to_string(n), sub.pass(),
               "removing one canonical sequence destroys the test-set "
               "property (h = spoke indicator)",
               {{"checks", sub.checks.size()},
                {"failures", sub.failure_count()}});
  }
  report.finalize();
  return report;
}

SuiteReport run_good_chain(const SuiteConfig& c) {
  SuiteReport report;
  report.suite = c.suite;
  report.seed = c.seed;
  report.config = config_json(c);
  report.note =
      "test-set verdicts are relative to the definable function corpus; "
      "chains are finite-stage";
  Rng rng(c.seed);
  FunctionCorpus corpus = default_corpus(c.max_spoke, 40, c.seed);
  TestSetDescriptor marker{CanonicalFan{}};
  std::int64_t chains = 50;
  for (std::int64_t k = 0; k < chains; ++k) {
    // Descending chain of canonical-fan entries with shrinking extras,
    // ending at the bare marker.
    std::vector<SequenceDescriptor> extras;
    std::int64_t count = std::uniform_int_distribution<std::int64_t>(1, 4)(rng);
    for (std::int64_t i = 0; i < count; ++i) {
      SequenceDescriptor t = random_convergent_sequence(rng, c.max_spoke, 64);
      if (!canonical_spoke_of(t)) extras.push_back(std::move(t));
    }
    ChainDescriptor chain;
    for (std::size_t drop = 0; drop <= extras.size(); ++drop) {
      CanonicalFan entry;
      entry.extras.assign(extras.begin(),
                          extras.end() - static_cast<std::ptrdiff_t>(drop));
      chain.entries.push_back(std::move(entry));
    }
    SuiteReport sub = chain_intersection_check(chain, marker, corpus);
    report.add("chain" + std::to_string(k), sub.pass(),
               "a finite chain through the minimal family intersects to "
               "exactly that family, which is a test set",
               {{"entries", chain.entries.size()},
                {"failures", sub.failure_count()}});
  }
  report.finalize();
  return report;
}

SuiteReport run_cardinality_evidence(const SuiteConfig& c) {
  SuiteReport report;
  report.suite = c.suite;
  report.seed = c.seed;
  report.config = config_json(c);
  report.note =
      "structural injection evidence only; the cardinal inequality itself "
      "is outside computational scope";
  Rng rng(c.seed);
  std::int64_t failures = 0, pairs = 0;
  constexpr std::int64_t kBound = 10000;
  while (pairs < c.probes) {
    IncreasingIndexMap g1 = random_increasing_map(rng, 16, 4);
    IncreasingIndexMap g2 = random_increasing_map(rng, 16, 4);
    SequenceDescriptor t1 = build_spoke_subsequence(g1);
    SequenceDescriptor t2 = build_spoke_subsequence(g2);
    if (t1 == t2) continue;
    ++pairs;
    DisagreementResult d = first_disagreement(t1, t2, kBound);
    bool ok = d.kind == DisagreementResult::Kind::DifferAt &&
              converges_to_apex(t1).value && converges_to_apex(t2).value;
    if (!ok) ++failures;
  }
  report.add("injection.distinct-maps", failures == 0,
             "distinct increasing maps yield sequences differing at a "
             "bounded index",
             {{"pairs", pairs}, {"bound", kBound}, {"failures", failures}});
  report.finalize();
  return report;
}

SuiteReport run_realline(const SuiteConfig& c) {
  SuiteReport report;
  report.suite = c.suite;
  report.seed = c.seed;
  report.config = config_json(c);
  report.note = "double-precision sampling at bounded depth; the negative "
                "verdict is NoneUpTo(depth), not a proof";

  RealSeqGen t_gen{Rational(2), true, Rational(1, 2), true};  // 1/(2k*pi + pi/2)
  RealSeqGen s_gen{Rational(1), true, Rational(0), false};    // 1/(k*pi)
  constexpr std::int64_t kDepth = 10000;

  double max_t_dev = 0.0, max_s_dev = 0.0;
  for (std::int64_t k = 1; k <= kDepth; ++k) {
    max_t_dev = std::max(max_t_dev, std::fabs(std::sin(1.0 / t_gen.term(k)) - 1.0));
    max_s_dev = std::max(max_s_dev, std::fabs(std::sin(1.0 / s_gen.term(k))));
  }
  report.add("values.T", max_t_dev <= c.realline_tol * 100,
             "f(T_k) stays within tolerance of 1",
             {{"max_deviation", max_t_dev}, {"depth", kDepth}});
  report.add("values.S", max_s_dev <= c.realline_tol * 100,
             "f(S_k) stays within tolerance of 0",
             {{"max_deviation", max_s_dev}, {"depth", kDepth}});

  WitnessVerdict wt =
      sample_witness_check(t_gen, kDepth, Rational(1, 2), c.realline_tol);
  report.add("witness.T", wt.witness,
             "T witnesses the discontinuity of sin(1/x) at 0", wt.to_json());
  WitnessVerdict ws =
      sample_witness_check(s_gen, kDepth, Rational(1, 2), c.realline_tol);
  report.add("witness.S", !ws.witness,
             "S provides no witness up to the sampled depth", ws.to_json());

  std::vector<ConvergenceRow> rows = convergence_sample(
      t_gen, kDepth, {Rational(1, 10), Rational(1, 100), Rational(1, 1000)});
  bool conv_ok = true;
  nlohmann::json conv = nlohmann::json::array();
  for (const auto& row : rows) {
    conv.push_back({{"epsilon", to_json(row.epsilon)},
                    {"absorption_index", row.absorption_index}});
    if (row.absorption_index > kDepth) conv_ok = false;
  }
  report.add("convergence.T", conv_ok, "T_k converges to 0",
             {{"rows", std::move(conv)}});
  report.finalize();
  return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "kernel",          "finite-modification", "prefix-chain",
      "bad-chain",       "ip-characterization", "mad",
      "amin-testset",    "minimality",          "good-chain",
      "cardinality-evidence", "realline-example"};
  return names;
}

SuiteReport run_suite(const SuiteConfig& config) {
  validate(config);
  if (config.suite == "kernel") return run_kernel(config);
  if (config.suite == "finite-modification")
    return run_finite_modification(config);
  if (config.suite == "prefix-chain") return run_prefix_chain(config, 20, true);
  if (config.suite == "bad-chain") return run_prefix_chain(config, 8, false);
  if (config.suite == "ip-characterization")
    return run_ip_characterization(config);
  if (config.suite == "mad") return run_mad(config);
  if (config.suite == "amin-testset") return run_amin_testset(config);
  if (config.suite == "minimality") return run_minimality(config);
  if (config.suite == "good-chain") return run_good_chain(config);
  if (config.suite == "cardinality-evidence")
    return run_cardinality_evidence(config);
  if (config.suite == "realline-example") return run_realline(config);
  throw Error(ErrorCode::UnknownSuite, "unknown suite: " + config.suite);
}

}  // namespace seqwit
