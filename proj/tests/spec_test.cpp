/* Copyright 2026 The ContSynth Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <doctest.h>

#include "contsynth/error.hpp"
#include "contsynth/interpreter.hpp"
#include "contsynth/spec.hpp"
#include "test_util.hpp"

using namespace contsynth;
using namespace contsynth::testing;

namespace {

const TokenInventory& inv() {
  static const TokenInventory standard = TokenInventory::standard();
  return standard;
}

// Exhaustive recursion over every alignment (match/substitute, insert,
// delete). Exponential; fine for short sequences.
long brute_levenshtein(const std::vector<int>& a, std::size_t i, const std::vector<int>& b, std::size_t j) {
  if (i == a.size()) return static_cast<long>(b.size() - j);
  if (j == b.size()) return static_cast<long>(a.size() - i);
  const long sub = brute_levenshtein(a, i + 1, b, j + 1) + (a[i] == b[j] ? 0 : 1);
  const long del = brute_levenshtein(a, i + 1, b, j) + 1;
  const long ins = brute_levenshtein(a, i, b, j + 1) + 1;
  return std::min({sub, del, ins});
}

std::vector<int> seq(const Value& v) { return v.is_int() ? std::vector<int>{v.as_int()} : v.as_list(); }

}  // namespace

TEST_CASE("edit_distance examples") {
  CHECK(edit_distance(L({6, 2, -2}), L({6, 2, -2})) == 0);
  CHECK(brute_levenshtein({1, 2, 3}, 0, {1, 3}, 0) == 1);
  CHECK(edit_distance(L({1, 2, 3}), L({1, 3})) == 1);
  CHECK(edit_distance(Value::null(), L({6, 2, -2})) == 23);
  CHECK(edit_distance(L({6, 2, -2}), Value::null()) == 23);
  CHECK(edit_distance(Value::null(), L({})) == 21);
  CHECK(edit_distance(I(5), L({5})) == 1);
  CHECK(edit_distance(I(5), I(7)) == 1);
}

TEST_CASE("edit_distance matches the brute-force oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 400; ++trial) {
    const Value a = random_value(rng, 6, 3);
    const Value b = random_value(rng, 6, 3);
    const long lev = brute_levenshtein(seq(a), 0, seq(b), 0);
    const long expected = std::max(lev, a.kind() != b.kind() ? 1L : 0L);
    CHECK(edit_distance(a, b) == expected);
  }
}

TEST_CASE("manhattan_distance examples and definition") {
  CHECK(manhattan_distance(L({1, 2}), L({1, 2})) == 0);
  CHECK(manhattan_distance(L({1, 2}), L({2, 2})) == 1);
  CHECK(manhattan_distance(L({1, 2, 3}), L({1, 2})) == 512);
  CHECK(manhattan_distance(Value::null(), L({6, 2, -2})) == 23 * 512);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = seq(random_value(rng, 8));
    const auto b = seq(random_value(rng, 8));
    long d = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
      if (i < a.size() && i < b.size()) d += std::labs(static_cast<long>(a[i]) - b[i]);
      else d += 512;
    }
    CHECK(manhattan_distance(Value::list(a), Value::list(b)) == d);
  }
}

TEST_CASE("metric laws on random values") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 3000; ++trial) {
    const Value a = random_value(rng, 8, 4);
    const Value b = random_value(rng, 8, 4);
    const Value c = random_value(rng, 8, 4);
    for (Metric m : {Metric::Edit, Metric::Manhattan}) {
      CHECK(distance(m, a, a) == 0);
      CHECK(distance(m, a, b) == distance(m, b, a));
      CHECK((distance(m, a, b) == 0) == (a == b));
    }
    CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
  }
}

TEST_CASE("Null penalty exceeds every non-Null distance to the same target") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 3000; ++trial) {
    const Value target = random_value(rng);
    const Value other = random_value(rng);
    CHECK(edit_distance(Value::null(), target) > edit_distance(other, target));
    CHECK(manhattan_distance(Value::null(), target) > manhattan_distance(other, target));
  }
}

TEST_CASE("error and satisfies") {
  const auto table = P(inv(), "Map(+1),Sort,Filter(Even),Reverse");
  const Specification one{{{L({5, 0, -3, 1, 4}), L({6, 2, -2})}}};
  const auto e = error(inv(), table, one);
  CHECK(e.per_example == std::vector<long>{0});
  CHECK(e.total == 0);
  CHECK(satisfies(inv(), table, one));

  const Specification id{{{L({1, 2}), L({1, 2})}}};
  const auto r = error(inv(), P(inv(), "Reverse"), id, Metric::Edit);
  CHECK(r.per_example == std::vector<long>{2});
  CHECK(r.total == 2);

  const Specification crash{{{L({}), I(3)}}};
  const auto c = error(inv(), P(inv(), "Head"), crash);
  CHECK(c.total > 0);

  CHECK(satisfies(inv(), P(inv(), "Sort"), {{{L({2, 1}), L({1, 2})}, {L({3}), L({3})}}}));
  CHECK_FALSE(satisfies(inv(), P(inv(), "Sort"), {{{L({2, 1}), L({2, 1})}}}));
}

TEST_CASE("zero error iff satisfies, for random programs and specs") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto target = random_program(rng, inv().size(), 3);
    const auto candidate = trial % 4 == 0 ? target : random_program(rng, inv().size(), 3);
    Specification spec;
    for (int j = 0; j < 3; ++j) {
      const Value in = random_value(rng, 10, 16);
      Value out = execute(inv(), target, in);
      if (out.is_null()) out = L({});
      spec.examples.push_back({in, out});
    }
    for (Metric m : {Metric::Edit, Metric::Manhattan}) {
      const auto e = error(inv(), candidate, spec, m);
      CHECK((e.total == 0) == satisfies(inv(), candidate, spec));
      CHECK(error_total(inv(), candidate, spec, m) == e.total);
    }
  }
}

TEST_CASE("specification JSON lines") {
  const auto spec = parse_specification("{\"input\": [1, 2], \"output\": 3}\n\n{\"input\": 4, \"output\": [4]}\n");
  REQUIRE(spec.size() == 2);
  CHECK(spec.examples[0].input == L({1, 2}));
  CHECK(spec.examples[0].output == I(3));
  CHECK(parse_specification(format_specification(spec)).examples[1].output == L({4}));

  CHECK_THROWS_AS(parse_specification("{\"input\": [1, 2]}"), Error);
  CHECK_THROWS_AS(parse_specification("not json"), Error);
  CHECK_THROWS_AS(parse_specification("{\"input\": [999], \"output\": 1}"), Error);
  CHECK_THROWS_AS(parse_specification(""), Error);
}
