#include <doctest.h>

#include "oracles.hpp"
#include "seqwit/definable_set.hpp"
#include "seqwit/generate.hpp"

using namespace seqwit;

namespace {

DefinableSet tail_set(std::int64_t spoke, std::int64_t start,
                      std::int64_t stride,
                      std::set<std::int64_t> excluded = {}) {
  DefinableSet m;
  m.add_tail(spoke, start, stride, std::move(excluded));
  return m;
}

}  // namespace

TEST_CASE("member: componentwise rules") {
  DefinableSet b2 = DefinableSet::full_spoke(2);
  CHECK(member(b2, FanPoint::node(2, 9)));
  CHECK_FALSE(member(b2, FanPoint::apex()));
  CHECK_FALSE(member(b2, FanPoint::node(1, 9)));

  DefinableSet m = tail_set(1, 2, 2, {4});
  CHECK_FALSE(member(m, FanPoint::node(1, 4)));
  CHECK(member(m, FanPoint::node(1, 6)));
  CHECK_FALSE(member(m, FanPoint::node(1, 3)));
}

TEST_CASE("cardinality_class") {
  DefinableSet finite;
  finite.add_chunk(1, {1});
  finite.add_chunk(2, {2});
  CHECK(cardinality_class(finite) == SetSize{false, 2});

  CHECK(cardinality_class(DefinableSet::full_spoke(1)).infinite);

  // Tail on spoke 1 starting at 3, stride 2, one exclusion: brute-force
  // count keeps growing with the depth bound.
  DefinableSet tail = tail_set(1, 3, 2, {5});
  CHECK(cardinality_class(tail).infinite);
  std::int64_t c500 = oracle::count_truncation(tail, 1, 500);
  std::int64_t c1000 = oracle::count_truncation(tail, 1, 1000);
  CHECK(c1000 > c500);
  CHECK(c500 > 200);
}

TEST_CASE("intersection_class: disjoint spokes") {
  IntersectionResult r = intersection_class(DefinableSet::full_spoke(1),
                                            DefinableSet::full_spoke(2));
  CHECK(r.size == SetSize{false, 0});
  CHECK(r.finite_points.empty());
}

TEST_CASE("intersection_class: CRT residue class") {
  IntersectionResult r =
      intersection_class(tail_set(1, 1, 2), tail_set(1, 1, 3));
  REQUIRE(r.size.infinite);
  const auto& w = r.certificate.at("witnesses").at(0);
  CHECK(w.at("spoke") == 1);
  CHECK(w.at("first") == 1);
  CHECK(w.at("stride") == 6);
  // Brute force within depth 1000 agrees with the residue class.
  nlohmann::json a = to_json(tail_set(1, 1, 2));
  nlohmann::json b = to_json(tail_set(1, 1, 3));
  for (std::int64_t d = 1; d <= 1000; ++d) {
    FanPoint x = FanPoint::node(1, d);
    bool both = oracle::member_json(a, x) && oracle::member_json(b, x);
    CHECK(both == (d % 6 == 1));
  }
}

TEST_CASE("intersection_class: incompatible residues") {
  IntersectionResult r =
      intersection_class(tail_set(1, 2, 2), tail_set(1, 1, 2));
  CHECK(r.size == SetSize{false, 0});
  nlohmann::json a = to_json(tail_set(1, 2, 2));
  nlohmann::json b = to_json(tail_set(1, 1, 2));
  for (std::int64_t d = 1; d <= 1000; ++d) {
    FanPoint x = FanPoint::node(1, d);
    bool both = oracle::member_json(a, x) && oracle::member_json(b, x);
    CHECK_FALSE(both);
  }
}

TEST_CASE("intersection_class agrees with truncation counting") {
  Rng rng(20240811);
  for (int i = 0; i < 120; ++i) {
    DefinableSet m = random_definable_set(rng, 8, 64);
    DefinableSet n = random_definable_set(rng, 8, 64);
    IntersectionResult r = intersection_class(m, n);
    nlohmann::json mj = to_json(m), nj = to_json(n);
    std::int64_t count = 0;
    for (std::int64_t s = 1; s <= 32; ++s)
      for (std::int64_t d = 1; d <= 2048; ++d) {
        FanPoint x = FanPoint::node(s, d);
        if (oracle::member_json(mj, x) && oracle::member_json(nj, x)) ++count;
      }
    if (r.size.infinite) {
      // Residue-class witnesses put at least D/lcm points in the
      // truncation; a shared row meets each truncation spoke once.
      bool row_witness = false;
      for (const auto& w : r.certificate.at("witnesses"))
        if (w.value("kind", "") == "identical-rows") row_witness = true;
      CHECK(count >= (row_witness ? 20 : 100));
    } else {
      // The truncation is deep enough to contain every certificate point.
      CHECK(count == r.size.count);
      CHECK(static_cast<std::int64_t>(r.finite_points.size()) == count);
      for (const FanPoint& p : r.finite_points) {
        CHECK(oracle::member_json(mj, p));
        CHECK(oracle::member_json(nj, p));
      }
    }
  }
}

TEST_CASE("almost_disjoint") {
  CHECK(almost_disjoint(DefinableSet::full_spoke(3), DefinableSet::full_spoke(5)));
  CHECK_FALSE(almost_disjoint(DefinableSet::full_spoke(1), tail_set(1, 7, 1)));

  DefinableSet infinite = DefinableSet::full_spoke(1);
  CHECK_FALSE(almost_disjoint(infinite, infinite));
  DefinableSet finite;
  finite.add_chunk(1, {1, 2});
  CHECK(almost_disjoint(finite, finite));

  // Symmetry over random pairs.
  Rng rng(7);
  for (int i = 0; i < 60; ++i) {
    DefinableSet m = random_definable_set(rng, 6, 48);
    DefinableSet n = random_definable_set(rng, 6, 48);
    CHECK(almost_disjoint(m, n) == almost_disjoint(n, m));
  }
}

TEST_CASE("in_IP decisions with certificates") {
  Decision b1 = in_IP(DefinableSet::full_spoke(1));
  CHECK(b1.value);
  CHECK(b1.certificate.at("kind") == "finitely-many-spokes");

  DefinableSet row;
  row.add_row(1, 0, 2);  // {Node(n,2) : n >= 1}
  Decision dr = in_IP(row);
  CHECK_FALSE(dr.value);
  REQUIRE(dr.certificate.at("kind") == "escaping-family");
  // The proof's cover excludes the first 100 row points.
  ThresholdCover cover;
  const auto& cj = dr.certificate.at("cover");
  cover.base = cj.at("default").get<std::int64_t>();
  if (cj.contains("affine")) {
    cover.slope = cj.at("affine").at("slope").get<std::int64_t>();
    cover.intercept = cj.at("affine").at("intercept").get<std::int64_t>();
  }
  nlohmann::json rj = to_json(row);
  for (std::int64_t n = 1; n <= 100; ++n) {
    FanPoint p = FanPoint::node(n, 2);
    CHECK(oracle::member_json(rj, p));
    CHECK_FALSE(cover.contains(p));
  }

  DefinableSet finite;
  finite.add_chunk(4, {1, 2, 3});
  Decision df = in_IP(finite);
  CHECK_FALSE(df.value);
  CHECK(df.certificate.at("kind") == "finite");
}

TEST_CASE("in_IP implies finite spoke support and infinitude") {
  Rng rng(99);
  for (int i = 0; i < 80; ++i) {
    DefinableSet m = random_definable_set(rng, 8, 64);
    if (!in_IP(m).value) continue;
    SpokeSupport s = spoke_support(m);
    CHECK_FALSE(s.unbounded_rows);
    CHECK(cardinality_class(m).infinite);
  }
}

TEST_CASE("row sets never accumulate at the apex") {
  Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    DefinableSet m = random_row_set(rng, 8, 64);
    CHECK_FALSE(accumulates_at_apex(m).value);
  }
}

TEST_CASE("spoke_support") {
  DefinableSet m = DefinableSet::full_spoke(2);
  m.add_chunk(9, {1});
  SpokeSupport s = spoke_support(m);
  CHECK(s.spokes == std::set<std::int64_t>{2, 9});
  CHECK_FALSE(s.unbounded_rows);

  DefinableSet row;
  row.add_row(1, 1, 0);
  CHECK(spoke_support(row).unbounded_rows);

  CHECK(spoke_support(DefinableSet{}).spokes.empty());
}

TEST_CASE("unsupported merges are rejected, not approximated") {
  DefinableSet m;
  m.add_tail(1, 1, 2);
  CHECK_THROWS_AS(m.add_tail(1, 2, 2), Error);  // disjoint residue classes
}
