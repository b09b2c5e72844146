#include "seqwit/generate.hpp"

#include <algorithm>

namespace seqwit {

namespace {

std::int64_t pick(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Rational random_rational(Rng& rng) {
  return Rational(pick(rng, -4, 4), pick(rng, 1, 4));
}

}  // namespace

DefinableSet random_finite_set(Rng& rng, std::int64_t max_spoke,
                               std::int64_t max_depth) {
  DefinableSet m;
  std::int64_t spokes = pick(rng, 1, std::min<std::int64_t>(4, max_spoke));
  for (std::int64_t i = 0; i < spokes; ++i) {
    std::int64_t spoke = pick(rng, 1, max_spoke);
    std::set<std::int64_t> depths;
    std::int64_t count = pick(rng, 1, 5);
    for (std::int64_t k = 0; k < count; ++k)
      depths.insert(pick(rng, 1, max_depth));
    try {
      m.add_chunk(spoke, depths);
    } catch (const Error&) {
      // spoke already carries a chunk the merge cannot absorb; skip it
    }
  }
  return m;
}

DefinableSet random_ip_set(Rng& rng, std::int64_t max_spoke,
                           std::int64_t max_depth) {
  DefinableSet m;
  std::int64_t tails = pick(rng, 1, std::min<std::int64_t>(3, max_spoke));
  std::set<std::int64_t> used;
  for (std::int64_t i = 0; i < tails; ++i) {
    std::int64_t spoke = pick(rng, 1, max_spoke);
    if (!used.insert(spoke).second) continue;
    std::int64_t start = pick(rng, 1, std::max<std::int64_t>(1, max_depth / 4));
    std::int64_t stride = pick(rng, 1, 5);
    std::set<std::int64_t> excluded;
    std::int64_t drops = pick(rng, 0, 2);
    for (std::int64_t k = 0; k < drops; ++k)
      excluded.insert(start + stride * pick(rng, 0, 6));
    m.add_tail(spoke, start, stride, std::move(excluded));
  }
  if (chance(rng, 0.4)) {
    std::int64_t spoke = pick(rng, 1, max_spoke);
    if (!used.count(spoke)) {
      std::set<std::int64_t> depths;
      for (std::int64_t k = pick(rng, 1, 3); k > 0; --k)
        depths.insert(pick(rng, 1, max_depth));
      m.add_chunk(spoke, depths);
    }
  }
  return m;
}

DefinableSet random_row_set(Rng& rng, std::int64_t max_spoke,
                            std::int64_t max_depth) {
  DefinableSet m;
  std::int64_t slope = pick(rng, 1, 3);
  m.add_row(pick(rng, 1, std::max<std::int64_t>(1, max_spoke / 2)), slope,
            pick(rng, 0, std::min<std::int64_t>(8, max_depth - slope)));
  if (chance(rng, 0.3))
    m.add_row(pick(rng, 1, max_spoke), slope + pick(rng, 1, 2), pick(rng, 0, 5));
  return m;
}

DefinableSet random_definable_set(Rng& rng, std::int64_t max_spoke,
                                  std::int64_t max_depth) {
  double roll = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (roll < 0.4) return random_ip_set(rng, max_spoke, max_depth);
  if (roll < 0.7) return random_finite_set(rng, max_spoke, max_depth);
  if (roll < 0.85) return random_row_set(rng, max_spoke, max_depth);
  DefinableSet m = random_ip_set(rng, max_spoke, max_depth);
  DefinableSet rows = random_row_set(rng, max_spoke, max_depth);
  for (const auto& row : rows.row_components())
    m.add_row(row.start_spoke, row.slope, row.intercept);
  return m;
}

FunctionDescriptor random_function(Rng& rng, std::int64_t max_spoke,
                                   std::int64_t max_depth) {
  FunctionDescriptor f;
  f.apex_value = random_rational(rng);
  f.default_value = chance(rng, 0.5) ? f.apex_value : random_rational(rng);
  std::int64_t layers = pick(rng, 0, 2);
  for (std::int64_t i = 0; i < layers; ++i)
    f.layers.emplace_back(random_definable_set(rng, max_spoke, max_depth),
                          random_rational(rng));
  std::int64_t overrides = pick(rng, 0, 3);
  for (std::int64_t i = 0; i < overrides; ++i)
    f.point_overrides[FanPoint::node(pick(rng, 1, max_spoke),
                                     pick(rng, 1, max_depth))] =
        random_rational(rng);
  return f;
}

FunctionCorpus default_corpus(std::int64_t spoke_bound,
                              std::size_t discontinuous_count,
                              std::uint64_t seed) {
  FunctionCorpus corpus;
  corpus.seed = seed;
  corpus.params = {{"spoke_bound", spoke_bound},
                   {"discontinuous_count", discontinuous_count}};
  corpus.functions.push_back(apex_characteristic());
  for (std::int64_t n = 1; n <= spoke_bound; ++n)
    corpus.functions.push_back(indicator(DefinableSet::full_spoke(n)));

  Rng rng(seed);
  std::size_t discontinuous = corpus.functions.size();
  while (discontinuous < discontinuous_count) {
    // Strided indicator with a value distinct from the apex value: a
    // tail accumulates at the apex, so the function is discontinuous.
    DefinableSet m = random_ip_set(rng, spoke_bound, 64);
    FunctionDescriptor f = indicator(m);
    if (chance(rng, 0.3)) f.layers.front().second = random_rational(rng);
    if (f.layers.front().second == f.apex_value) f.layers.front().second = Rational(1);
    corpus.functions.push_back(std::move(f));
    ++discontinuous;
  }
  corpus.functions.push_back(constant_function(Rational(0)));
  corpus.functions.push_back(constant_function(Rational(3, 2)));
  {
    // Continuous but not constant: deviations confined to finitely many
    // points.
    FunctionDescriptor f = constant_function(Rational(1));
    f.point_overrides[FanPoint::node(1, 1)] = Rational(2);
    f.point_overrides[FanPoint::node(2, 5)] = Rational(-1, 3);
    corpus.functions.push_back(std::move(f));
  }
  return corpus;
}

std::vector<FanPoint> random_prefix(Rng& rng, std::int64_t max_spoke,
                                    std::int64_t max_depth,
                                    std::size_t max_len) {
  std::vector<FanPoint> prefix;
  std::size_t len = static_cast<std::size_t>(
      pick(rng, 0, static_cast<std::int64_t>(max_len)));
  for (std::size_t i = 0; i < len; ++i) {
    if (chance(rng, 0.15))
      prefix.push_back(FanPoint::apex());
    else
      prefix.push_back(
          FanPoint::node(pick(rng, 1, max_spoke), pick(rng, 1, max_depth)));
  }
  return prefix;
}

SequenceDescriptor random_convergent_sequence(Rng& rng,
                                              std::int64_t max_spoke,
                                              std::int64_t max_depth) {
  SequenceDescriptor t;
  t.prefix = random_prefix(rng, max_spoke, max_depth, 4);
  std::int64_t channels = pick(rng, 1, 3);
  for (std::int64_t i = 0; i < channels; ++i) {
    if (chance(rng, 0.2)) {
      t.channels.push_back(ConstApex{});
      continue;
    }
    SpokeRun run;
    run.spoke = pick(rng, 1, max_spoke);
    run.start = pick(rng, 1, std::max<std::int64_t>(1, max_depth / 8));
    run.stride = pick(rng, 1, 4);
    if (chance(rng, 0.3))
      run.skipped.insert(run.start + run.stride * pick(rng, 0, 5));
    t.channels.push_back(run);
  }
  return t;
}

SequenceDescriptor random_probe(Rng& rng, const SequenceDescriptor& reference,
                                std::int64_t max_spoke,
                                std::int64_t max_depth) {
  SequenceDescriptor t = random_convergent_sequence(rng, max_spoke, max_depth);
  if (chance(rng, 0.6)) {
    // Copy an initial segment of the reference so prefix-family
    // membership is sometimes decided deep in the terms.
    std::int64_t copy = pick(rng, 1, 12);
    std::vector<FanPoint> prefix;
    for (std::int64_t k = 1; k <= copy; ++k)
      prefix.push_back(term(reference, k));
    for (const auto& p : t.prefix) prefix.push_back(p);
    t.prefix = std::move(prefix);
  }
  return t;
}

IncreasingIndexMap random_increasing_map(Rng& rng, std::int64_t max_initial,
                                         std::int64_t max_slope) {
  IncreasingIndexMap g;
  g.slope = pick(rng, 1, max_slope);
  g.intercept = pick(rng, 0, 8);
  std::int64_t len = pick(rng, 0, 5);
  std::int64_t prev = 0;
  for (std::int64_t i = 0; i < len; ++i) {
    prev = prev + pick(rng, 1, std::max<std::int64_t>(1, max_initial / 4));
    g.initial.push_back(prev);
  }
  // Keep the explicit values strictly below the first affine value.
  std::int64_t first_affine =
      g.slope * (static_cast<std::int64_t>(g.initial.size()) + 1) + g.intercept;
  while (!g.initial.empty() && g.initial.back() >= first_affine) {
    g.initial.pop_back();
    first_affine =
        g.slope * (static_cast<std::int64_t>(g.initial.size()) + 1) + g.intercept;
  }
  while (first_affine < 1) {
    ++g.intercept;
    ++first_affine;
  }
  return g;
}

}  // namespace seqwit
