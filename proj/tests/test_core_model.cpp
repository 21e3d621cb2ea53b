// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "evc/error.hpp"
#include "evc/instance_io.hpp"
#include "evc/measure.hpp"
#include "evc/prng.hpp"
#include "evc/space.hpp"

using namespace evc;

namespace {

SpacePtr two_class_space() {
  return EquivalenceSpace::create({"a", "b", "c", "d"},
                                  {{"a", "C1"}, {"b", "C1"}, {"c", "C2"}, {"d", "C2"}});
}

}  // namespace

TEST_CASE("build_space computes fibers in point order") {
  auto space = two_class_space();
  CHECK(space->point_count() == 4);
  CHECK(space->class_count() == 2);
  CHECK(space->class_ids() == std::vector<std::string>{"C1", "C2"});
  CHECK(space->class_members(0) == std::vector<std::size_t>{0, 1});
  CHECK(space->class_members(1) == std::vector<std::size_t>{2, 3});
  CHECK(space->same_class(0, 1));
  CHECK_FALSE(space->same_class(0, 2));
}

TEST_CASE("build_space degenerate and error cases") {
  auto singleton = EquivalenceSpace::create({"a"}, {{"a", "C1"}});
  CHECK(singleton->point_count() == 1);
  CHECK(singleton->class_count() == 1);

  CHECK_THROWS_WITH_AS(
      (void)EquivalenceSpace::create({"a", "b"}, {{"a", "C1"}}),
      doctest::Contains("MissingLabel"), Error);
  CHECK_THROWS_WITH_AS(
      (void)EquivalenceSpace::create({"a", "a"}, {{"a", "C1"}}),
      doctest::Contains("DuplicatePoint"), Error);
  CHECK_THROWS_WITH_AS(
      (void)EquivalenceSpace::create({"a"}, {{"a", "C1"}, {"z", "C9"}}),
      doctest::Contains("UnknownPoint"), Error);
  CHECK_THROWS_AS((void)EquivalenceSpace::create({}, {}), Error);
}

TEST_CASE("build_measure accepts decimals and fractions") {
  auto space = two_class_space();
  auto mu = ProbMeasure::create(space, {{"a", "0.5"}, {"b", "0"}, {"c", "0.5"}, {"d", "0"}});
  CHECK(mu.weight(0) == Rational(1, 2));
  CHECK(mu.weight(1) == Rational(0));

  auto thirds =
      ProbMeasure::create(space, {{"a", "1/3"}, {"b", "1/3"}, {"c", "1/3"}, {"d", "0"}});
  CHECK(thirds.weight(0) == Rational(1, 3));
}

TEST_CASE("build_measure error cases report exact arithmetic") {
  auto pair_space = EquivalenceSpace::create({"a", "b"}, {{"a", "C1"}, {"b", "C2"}});
  CHECK_THROWS_WITH_AS((void)ProbMeasure::create(pair_space, {{"a", "0.5"}, {"b", "0.6"}}),
                       doctest::Contains("1/10"), Error);
  CHECK_THROWS_WITH_AS((void)ProbMeasure::create(pair_space, {{"a", "1.5"}, {"b", "-0.5"}}),
                       doctest::Contains("NegativeWeight"), Error);
  CHECK_THROWS_WITH_AS(
      (void)ProbMeasure::create(pair_space, {{"a", "0.5"}, {"b", "0.5"}, {"z", "0"}}),
      doctest::Contains("UnknownPoint"), Error);
  CHECK_THROWS_WITH_AS((void)ProbMeasure::create(pair_space, {{"a", "1"}}),
                       doctest::Contains("MissingWeight"), Error);
}

TEST_CASE("saturate closes point sets under the relation") {
  auto space = two_class_space();
  CHECK(saturate(space, {"a"}).member_points() == std::vector<std::string>{"a", "b"});
  CHECK(saturate(space, {}).is_empty());
  CHECK(saturate(space, {"a", "c"}).member_points() ==
        std::vector<std::string>{"a", "b", "c", "d"});
  CHECK_THROWS_WITH_AS((void)saturate(space, {"nope"}), doctest::Contains("UnknownPoint"),
                       Error);
}

TEST_CASE("is_saturated matches the definition") {
  auto space = two_class_space();
  CHECK(is_saturated(space, {"a", "b"}));
  CHECK_FALSE(is_saturated(space, {"a"}));
  CHECK(is_saturated(space, {"a", "b", "c", "d"}));
  CHECK(is_saturated(space, {}));
}

TEST_CASE("saturation is extensive, idempotent, and saturated") {
  auto space = EquivalenceSpace::create(
      {"a", "b", "c", "d", "e"},
      {{"a", "x"}, {"b", "x"}, {"c", "y"}, {"d", "z"}, {"e", "z"}});
  SplitMix64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<bool> mask(space->point_count());
    for (std::size_t p = 0; p < mask.size(); ++p) mask[p] = rng.below(2) == 1;
    auto sat = saturate_mask(space, mask);
    auto sat_points = sat.point_mask();
    for (std::size_t p = 0; p < mask.size(); ++p) {
      if (mask[p]) CHECK(sat_points[p]);  // extensive
    }
    CHECK(saturate_mask(space, sat_points).point_mask() == sat_points);  // idempotent
    CHECK(is_saturated_mask(space, sat_points));
  }
}

TEST_CASE("saturated sets form a sigma-field (exhaustive, 3 classes)") {
  auto space = EquivalenceSpace::create(
      {"a", "b", "c", "d", "e"},
      {{"a", "x"}, {"b", "x"}, {"c", "y"}, {"d", "z"}, {"e", "z"}});
  std::vector<SaturatedSet> sets;
  for (std::uint64_t bits = 0; bits < 8; ++bits) {
    std::vector<bool> mask(3);
    for (std::size_t c = 0; c < 3; ++c) mask[c] = (bits >> c) & 1;
    sets.emplace_back(space, mask);
  }
  for (const auto& s : sets) {
    CHECK(is_saturated_mask(space, s.complement().point_mask()));
    for (const auto& t : sets) {
      CHECK(is_saturated_mask(space, s.unite(t).point_mask()));
    }
  }
}

TEST_CASE("identity relation makes every subset saturated") {
  auto space = EquivalenceSpace::create(
      {"a", "b", "c", "d"}, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}});
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    std::vector<bool> mask(4);
    for (std::size_t p = 0; p < 4; ++p) mask[p] = (bits >> p) & 1;
    CHECK(is_saturated_mask(space, mask));
  }
}

TEST_CASE("instance JSON round trip") {
  const std::string text = R"({
    "points": ["a", "b", "c", "d"],
    "classes": {"a": "C1", "b": "C1", "c": "C2", "d": "C2"},
    "mu": {"a": "0.5", "b": "0", "c": "0.5", "d": "0"},
    "nu": {"a": "0", "b": "0.2", "c": "0", "d": "0.8"}
  })";
  Instance inst = parse_instance_json(text);
  CHECK(inst.space->point_count() == 4);
  CHECK(inst.mu.weight(0) == Rational(1, 2));
  CHECK(inst.nu.weight(3) == Rational(4, 5));

  std::string emitted = instance_to_json(inst);
  Instance again = parse_instance_json(emitted);
  CHECK(again.space->equals(*inst.space));
  CHECK(again.mu == inst.mu);
  CHECK(again.nu == inst.nu);
  CHECK(instance_to_json(again) == emitted);  // serialization is a fixed point
}

TEST_CASE("instance JSON rejects unknown and missing keys") {
  CHECK_THROWS_WITH_AS(
      (void)parse_instance_json(R"({"points": ["a"], "classes": {"a": "C"},
        "mu": {"a": "1"}, "nu": {"a": "1"}, "extra": 1})"),
      doctest::Contains("unknown instance key"), Error);
  CHECK_THROWS_WITH_AS(
      (void)parse_instance_json(R"({"points": ["a"], "classes": {"a": "C"}, "mu": {"a": "1"}})"),
      doctest::Contains("missing instance key"), Error);
  CHECK_THROWS_AS((void)parse_instance_json("not json"), Error);
  CHECK_THROWS_AS(
      (void)parse_instance_json(R"({"points": ["a"], "classes": {"a": "C"},
        "mu": {"a": "0.9"}, "nu": {"a": "1"}})"),
      Error);
}
