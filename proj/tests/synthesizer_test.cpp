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

#include <sstream>

#include "contsynth/error.hpp"
#include "contsynth/interpreter.hpp"
#include "contsynth/synthesizer.hpp"
#include "test_util.hpp"

using namespace contsynth;
using contsynth::testing::I;
using contsynth::testing::L;
using contsynth::testing::P;

namespace {

Specification sort_spec() {
  return {{{L({3, 1, 2}), L({1, 2, 3})}, {L({5, -1, 0, 4}), L({-1, 0, 4, 5})}}};
}

Specification spec_of(const TokenInventory& inv, const Program& p, std::vector<Value> inputs) {
  Specification s;
  for (auto& x : inputs) s.examples.push_back({x, execute(inv, p, x)});
  return s;
}

}  // namespace

TEST_CASE("option names round-trip") {
  for (auto b : {BinType::Uniform, BinType::Biased}) CHECK(parse_bin_type(to_string(b)) == b);
  for (auto g : {GeneInit::Normal, GeneInit::Learned}) CHECK(parse_gene_init(to_string(g)) == g);
  for (auto c : {CheckMode::Full, CheckMode::Sub}) CHECK(parse_check_mode(to_string(c)) == c);
  CHECK_THROWS_AS(parse_check_mode("partial"), Error);

  SynthesisConfig c;
  apply_policy_name(c, "none");
  CHECK_FALSE(c.restart_enabled);
  CHECK(policy_name(c) == "none");
  apply_policy_name(c, "MB+CB");
  CHECK(c.restart_enabled);
  CHECK(policy_name(c) == "MB+CB");
}

TEST_CASE("best setup") {
  const auto c = SynthesisConfig::best_setup(4);
  CHECK(c.length == 4);
  CHECK(c.scheme == SchemeKind::Bin);
  CHECK(policy_name(c) == "PB+CB");
  CHECK(c.bins == BinType::Biased);
  CHECK(c.check == CheckMode::Full);
}

TEST_CASE("full and sub checking") {
  const auto inv = TokenInventory::standard();
  const Specification spec = {{{L({3, 1, 2}), I(1)}, {L({9, 4}), I(4)}}};
  const std::vector<Program> programs = {P(inv, "Sort,Head,Map(+1)"), P(inv, "Reverse")};

  long explored = 0;
  CHECK_FALSE(check_candidates(inv, programs, spec, CheckMode::Full, explored).has_value());
  CHECK(explored == 2);

  explored = 0;
  const auto found = check_candidates(inv, programs, spec, CheckMode::Sub, explored);
  REQUIRE(found.has_value());
  CHECK(*found == P(inv, "Sort,Head"));
  // every candidate of the generation is still counted
  CHECK(explored == 4);

  // Prefix Sort repeats across both candidates and is only counted once.
  const std::vector<Program> twins = {P(inv, "Sort,Reverse"), P(inv, "Sort,Last")};
  const Specification never = {{{L({1, 2}), I(200)}}};
  const auto outcome = evaluate_candidates(inv, twins, never, CheckMode::Sub, Metric::Edit);
  CHECK_FALSE(outcome.solution.has_value());
  CHECK(outcome.checked == 3);
  CHECK(outcome.best_error == 1);
}

TEST_CASE("gene initialization") {
  const auto inv = TokenInventory::standard();
  auto cfg = SynthesisConfig::best_setup(3);
  const auto uniform = TokenProbabilities::uniform(inv.size());
  const auto layout = build_layout(uniform);
  CHECK(initialize_genes(cfg, inv.size(), layout, nullptr).isZero());

  cfg.gene_init = GeneInit::Learned;
  CHECK_THROWS_AS(initialize_genes(cfg, inv.size(), layout, nullptr), Error);

  std::vector<double> w(inv.size(), 1.0);
  w[inv.find("Sort")] = 50.0;
  const auto probs = TokenProbabilities::from_weights(w);
  const auto biased = build_layout(probs);
  const auto m = initialize_genes(cfg, inv.size(), biased, &probs);
  REQUIRE(m.size() == 3);
  CHECK(bin_map(std::span<const double>(m.data(), 3), biased) == P(inv, "Sort,Sort,Sort"));

  cfg.scheme = SchemeKind::MultiGroup;
  const auto g = initialize_genes(cfg, inv.size(), biased, &probs);
  CHECK(multi_group_map(std::span<const double>(g.data(), g.size()), inv.size()) ==
        P(inv, "Sort,Sort,Sort"));
}

TEST_CASE("sorts with a single token") {
  const auto inv = TokenInventory::standard();
  auto cfg = SynthesisConfig::best_setup(1);
  cfg.bins = BinType::Uniform;
  cfg.time_budget = 20;
  const auto r = synthesize(inv, sort_spec(), cfg);
  REQUIRE(r.found.has_value());
  CHECK(r.stop_reason == StopReason::Solved);
  CHECK(satisfies(inv, *r.found, sort_spec()));
}

TEST_CASE("unsatisfiable spec runs out of budget") {
  const std::vector<std::string> names = {"Head", "Sum", "Map(+1)"};
  const auto inv = TokenInventory::subset(TokenInventory::standard(), names);
  // Every program over this inventory yields an Int; a list output cannot match.
  const Specification spec = {{{L({1, 2, 3}), L({7, 7})}}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const Program p{{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                         static_cast<std::uint16_t>(c)}};
        REQUIRE_FALSE(satisfies(inv, p, spec));
      }
  auto cfg = SynthesisConfig::best_setup(3);
  cfg.bins = BinType::Uniform;
  cfg.time_budget = 0.5;
  const auto r = synthesize(inv, spec, cfg);
  CHECK_FALSE(r.found.has_value());
  CHECK(r.stop_reason == StopReason::Timeout);

  cfg.restart_enabled = false;
  cfg.time_budget = 30;
  const auto s = synthesize(inv, spec, cfg);
  CHECK_FALSE(s.found.has_value());
  CHECK(s.stop_reason == StopReason::Stagnated);
  CHECK(s.restarts == 0);
}

TEST_CASE("zero budget") {
  const auto inv = TokenInventory::standard();
  auto cfg = SynthesisConfig::best_setup(1);
  cfg.bins = BinType::Uniform;
  cfg.time_budget = 0;
  const auto r = synthesize(inv, sort_spec(), cfg);
  CHECK_FALSE(r.found.has_value());
  CHECK(r.stop_reason == StopReason::Timeout);
  CHECK(r.programs_explored == 0);
}

TEST_CASE("configuration errors") {
  const auto inv = TokenInventory::standard();
  auto cfg = SynthesisConfig::best_setup(2);
  try {
    (void)synthesize(inv, sort_spec(), cfg);
    FAIL("biased bins without probabilities");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingProbabilities);
  }
  cfg.bins = BinType::Uniform;
  cfg.length = 0;
  CHECK_THROWS_AS(synthesize(inv, sort_spec(), cfg), Error);
  cfg.length = 2;
  CHECK_THROWS_AS(synthesize(inv, Specification{}, cfg), Error);
}

TEST_CASE("deterministic, sound and thread-transparent") {
  const auto inv = TokenInventory::standard();
  const Program target = P(inv, "Filter(>0),Map(*2)");
  const auto spec = spec_of(inv, target,
                            {L({1, -2, 3}), L({-5, 4, 0, 7}), L({8, 8, -1}), L({2, -9, -9, 6, 1})});
  for (auto scheme : {SchemeKind::Bin, SchemeKind::DynamicBin, SchemeKind::SingleGroup,
                      SchemeKind::MultiGroup, SchemeKind::DynamicMultiGroup}) {
    INFO(to_string(scheme));
    auto cfg = SynthesisConfig::best_setup(2);
    cfg.scheme = scheme;
    cfg.bins = BinType::Uniform;
    cfg.time_budget = 600;
    cfg.max_evaluations = 20000;
    cfg.seed = 7;
    std::ostringstream t1, t2;
    const auto a = synthesize(inv, spec, cfg, nullptr, &t1);
    const auto b = synthesize(inv, spec, cfg, nullptr, &t2);
    CHECK(a.found == b.found);
    CHECK(a.programs_explored == b.programs_explored);
    CHECK(a.generations == b.generations);
    CHECK(t1.str() == t2.str());
    if (a.found) CHECK(satisfies(inv, *a.found, spec));

    cfg.eval_threads = 3;
    const auto c = synthesize(inv, spec, cfg);
    CHECK(c.found == a.found);
    CHECK(c.programs_explored == a.programs_explored);
  }
}

TEST_CASE("result json") {
  const auto inv = TokenInventory::standard();
  auto cfg = SynthesisConfig::best_setup(1);
  cfg.bins = BinType::Uniform;
  const auto r = synthesize(inv, sort_spec(), cfg);
  const auto j = result_to_json(r, cfg, inv);
  CHECK(j.at("stop_reason") == "Solved");
  CHECK(j.at("found").is_string());
  CHECK(j.at("config").at("policy") == "PB+CB");
}
