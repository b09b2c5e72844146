#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "seqwit/definable_set.hpp"
#include "seqwit/function.hpp"
#include "seqwit/sequence.hpp"
#include "seqwit/testset.hpp"

namespace seqwit {

using Rng = std::mt19937_64;

/// Default corpus: apex characteristic, spoke indicators 1_{B_n} for
/// n <= spoke_bound, pseudo-random strided indicators up to the requested
/// discontinuous count, and a few continuous members.
FunctionCorpus default_corpus(std::int64_t spoke_bound,
                              std::size_t discontinuous_count,
                              std::uint64_t seed);

/// Random definable set; row/finite shares are controlled by weights.
DefinableSet random_definable_set(Rng& rng, std::int64_t max_spoke,
                                  std::int64_t max_depth);
DefinableSet random_ip_set(Rng& rng, std::int64_t max_spoke,
                           std::int64_t max_depth);
DefinableSet random_row_set(Rng& rng, std::int64_t max_spoke,
                            std::int64_t max_depth);
DefinableSet random_finite_set(Rng& rng, std::int64_t max_spoke,
                               std::int64_t max_depth);

FunctionDescriptor random_function(Rng& rng, std::int64_t max_spoke,
                                   std::int64_t max_depth);

/// Random convergent sequence descriptor (SpokeRun/ConstApex channels).
SequenceDescriptor random_convergent_sequence(Rng& rng,
                                              std::int64_t max_spoke,
                                              std::int64_t max_depth);

/// Random probe sequence for prefix-family checks: sometimes copies an
/// initial segment of the reference before diverging.
SequenceDescriptor random_probe(Rng& rng, const SequenceDescriptor& reference,
                                std::int64_t max_spoke,
                                std::int64_t max_depth);

std::vector<FanPoint> random_prefix(Rng& rng, std::int64_t max_spoke,
                                    std::int64_t max_depth,
                                    std::size_t max_len);

IncreasingIndexMap random_increasing_map(Rng& rng, std::int64_t max_initial,
                                         std::int64_t max_slope);

}  // namespace seqwit
