#include <doctest.h>

#include <cmath>

#include "seqwit/realline.hpp"

using namespace seqwit;

namespace {
const RealSeqGen kT{Rational(2), true, Rational(1, 2), true};  // 1/(2k*pi + pi/2)
const RealSeqGen kS{Rational(1), true, Rational(0), false};    // 1/(k*pi)
}  // namespace

TEST_CASE("generators decrease strictly to 0") {
  for (std::int64_t k = 1; k < 2000; ++k) {
    CHECK(kT.term(k) > kT.term(k + 1));
    CHECK(kS.term(k) > kS.term(k + 1));
    CHECK(kT.term(k) > 0.0);
    CHECK(kS.term(k) > 0.0);
  }
}

TEST_CASE("T witnesses with deviation pinned to 1") {
  WitnessVerdict v = sample_witness_check(kT, 10000, Rational(1, 2), 1e-9);
  CHECK(v.witness);
  CHECK(v.indices.size() == 10000);
  CHECK(std::fabs(v.max_deviation - 1.0) <= 1e-7);
}

TEST_CASE("S yields no witness up to depth") {
  WitnessVerdict v = sample_witness_check(kS, 10000, Rational(1, 2), 1e-9);
  CHECK_FALSE(v.witness);
  CHECK(v.max_deviation <= 1e-7);
  CHECK(v.depth == 10000);
  CHECK(v.to_json().at("verdict") == "none-up-to-depth");
}

TEST_CASE("constant-zero flag never witnesses") {
  WitnessVerdict v =
      sample_witness_check(kT, 500, Rational(1, 2), 1e-9, true);
  CHECK_FALSE(v.witness);
  CHECK(v.max_deviation == 0.0);
}

TEST_CASE("convergence_sample") {
  std::vector<ConvergenceRow> rows =
      convergence_sample(kT, 10000, {Rational(1, 100), Rational(10)});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].absorption_index <= 16);
  CHECK(rows[1].absorption_index == 1);
  // Brute-force confirmation of the 1/100 absorption index.
  std::int64_t n = rows[0].absorption_index;
  CHECK(kT.term(n) < 0.01);
  if (n > 1) CHECK(kT.term(n - 1) >= 0.01);

  CHECK(convergence_sample(kS, 100, {}).empty());
}
