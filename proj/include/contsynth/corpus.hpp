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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "contsynth/cmaes.hpp"
#include "contsynth/dsl.hpp"
#include "contsynth/mapping.hpp"
#include "contsynth/spec.hpp"

namespace contsynth {

using Rng = cma::Rng;

struct CorpusEntry {
  Program program;
  Specification spec;

  std::size_t length() const noexcept { return program.size(); }
};

inline constexpr int kDefaultProbeCount = 50;
inline constexpr int kDefaultExamples = 5;
inline constexpr long kMaxProgramRejections = 100'000;
inline constexpr long kMaxInputRejections = 100'000;

/// Random input list: length uniform in [3, 20]; values uniform in
/// [-M, M-1] with M drawn from {8, 16, 32, 64, 128, 256}. With
/// `exercise_predicates` the list is redrawn until it holds both a
/// negative and an even value.
Value random_input(Rng& rng, bool exercise_predicates = false);

std::vector<Value> make_probes(Rng& rng, int count = kDefaultProbeCount);

/// True when deleting one token, or two adjacent tokens, leaves the output
/// unchanged on every probe where `p` itself produces a non-Null value.
bool is_redundant(const TokenInventory& inv, const Program& p, std::span<const Value> probes);

/// Uniform token draws, resampled until the program is non-redundant and
/// yields a non-Null output on at least one probe.
Program generate_program(int length, const TokenInventory& inv, Rng& rng,
                         std::span<const Value> probes);

/// `count` examples whose outputs are non-Null; the first input exercises
/// the Filter/Count predicates.
Specification generate_spec(const TokenInventory& inv, const Program& p, int count, Rng& rng);

/// Deduplicated corpus: `count_per_length` programs for each length, in
/// order, fully determined by `seed`.
std::vector<CorpusEntry> generate_corpus(const TokenInventory& inv, std::span<const int> lengths,
                                         int count_per_length, std::uint64_t seed,
                                         int examples = kDefaultExamples);

/// Relative token frequencies across the corpus, floored.
TokenProbabilities estimate_token_probs(std::span<const CorpusEntry> corpus,
                                        std::size_t inventory_size);

// JSON-lines: {"program": "...", "length": l, "examples": [{"input":..,"output":..}, ...]}
std::string format_corpus(std::span<const CorpusEntry> corpus, const TokenInventory& inv);
std::vector<CorpusEntry> parse_corpus(std::string_view jsonl, const TokenInventory& inv);
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path, const TokenInventory& inv);

}  // namespace contsynth
