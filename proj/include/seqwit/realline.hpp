#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "seqwit/rational.hpp"

namespace seqwit {

/// Closed-form positive sequence T_k = 1 / (c1*k + c2) with c1 > 0, each
/// coefficient an exact rational optionally scaled by pi. Strictly
/// decreasing to 0.
struct RealSeqGen {
  Rational c1{1};
  bool c1_pi = false;
  Rational c2{0};
  bool c2_pi = false;

  double term(std::int64_t k) const;
};

/// Three-valued outcome of the bounded witness check: sampling can
/// confirm a witness but can never prove non-membership, so the negative
/// verdict carries its depth bound.
struct WitnessVerdict {
  bool witness = false;
  Rational epsilon;
  std::vector<std::int64_t> indices;  // deviating indices, when witness
  std::int64_t depth = 0;
  double max_deviation = 0.0;

  nlohmann::json to_json() const;
};

/// Evaluates f(x) = sin(1/x), f(0) = 0 along the generator at depths
/// 1..depth in double precision. Witness when at least depth/2 indices
/// deviate by >= epsilon - tol; NoneUpTo(depth) otherwise. With
/// constant_zero set, f is replaced by the zero function.
WitnessVerdict sample_witness_check(const RealSeqGen& gen, std::int64_t depth,
                                    const Rational& epsilon, double tol,
                                    bool constant_zero = false);

struct ConvergenceRow {
  Rational epsilon;
  std::int64_t absorption_index = 0;
};

/// First index after which all sampled terms lie within each epsilon.
std::vector<ConvergenceRow> convergence_sample(
    const RealSeqGen& gen, std::int64_t depth,
    const std::vector<Rational>& epsilon_grid);

}  // namespace seqwit
