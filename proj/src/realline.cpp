#include "seqwit/realline.hpp"

#include "seqwit/function.hpp"

#include <cmath>
#include <numbers>

namespace seqwit {

double RealSeqGen::term(std::int64_t k) const {
  double a = c1.to_double() * (c1_pi ? std::numbers::pi : 1.0);
  double b = c2.to_double() * (c2_pi ? std::numbers::pi : 1.0);
  return 1.0 / (a * static_cast<double>(k) + b);
}

nlohmann::json WitnessVerdict::to_json() const {
  nlohmann::json j = {{"witness", witness},
                      {"epsilon", seqwit::to_json(epsilon)},
                      {"depth", depth},
                      {"max_deviation", max_deviation}};
  if (witness) {
    j["indices"] = {{"first", indices.empty() ? 0 : indices.front()},
                    {"count", indices.size()}};
  } else {
    j["verdict"] = "none-up-to-depth";
  }
  return j;
}

WitnessVerdict sample_witness_check(const RealSeqGen& gen, std::int64_t depth,
                                    const Rational& epsilon, double tol,
                                    bool constant_zero) {
  WitnessVerdict v;
  v.epsilon = epsilon;
  v.depth = depth;
  double eps = epsilon.to_double();
  for (std::int64_t k = 1; k <= depth; ++k) {
    double x = gen.term(k);
    double fx = constant_zero ? 0.0 : std::sin(1.0 / x);
    double dev = std::fabs(fx - 0.0);  // f(0) = 0 at the limit
    v.max_deviation = std::max(v.max_deviation, dev);
    if (dev >= eps - tol) v.indices.push_back(k);
  }
  v.witness = static_cast<std::int64_t>(v.indices.size()) * 2 >= depth;
  if (!v.witness) v.indices.clear();
  return v;
}

std::vector<ConvergenceRow> convergence_sample(
    const RealSeqGen& gen, std::int64_t depth,
    const std::vector<Rational>& epsilon_grid) {
  std::vector<ConvergenceRow> rows;
  for (const Rational& eps : epsilon_grid) {
    ConvergenceRow row;
    row.epsilon = eps;
    double e = eps.to_double();
    // The generator is strictly decreasing, so the absorption index is
    // the first k with |T_k| < e; scan confirms it over the full depth.
    std::int64_t first_good = depth + 1;
    for (std::int64_t k = depth; k >= 1; --k) {
      if (std::fabs(gen.term(k)) < e)
        first_good = k;
      else
        break;
    }
    row.absorption_index = first_good;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace seqwit
