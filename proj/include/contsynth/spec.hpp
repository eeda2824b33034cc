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
#include <string>
#include <string_view>
#include <vector>

#include "contsynth/dsl.hpp"
#include "contsynth/value.hpp"

namespace contsynth {

struct IOExample {
  Value input;
  Value output;
};

/// Target behaviour: s input-output examples.
struct Specification {
  std::vector<IOExample> examples;

  std::size_t size() const noexcept { return examples.size(); }
};

enum class Metric : std::uint8_t { Edit, Manhattan };

std::string_view to_string(Metric m);
Metric parse_metric(std::string_view text);

/// Added to the target length when one side is Null; larger than any
/// distance between two non-Null values of bounded length.
inline constexpr long kNullPenaltyOffset = 20;
/// Per-element weight for length mismatches under the Manhattan metric.
inline constexpr long kManhattanGap = 512;

/// Levenshtein distance over integer sequences (an Int is a length-1
/// sequence). An Int compared with a list never scores 0.
long edit_distance(const Value& a, const Value& b);

/// Sum of absolute differences over the common prefix plus kManhattanGap
/// for every unmatched element.
long manhattan_distance(const Value& a, const Value& b);

long distance(Metric m, const Value& a, const Value& b);

struct ErrorVector {
  std::vector<long> per_example;
  long total = 0;
};

/// Per-example distances and their sum; total is 0 exactly when `p`
/// satisfies `spec`.
ErrorVector error(const TokenInventory& inv, const Program& p, const Specification& spec,
                  Metric metric = Metric::Edit);

/// Scalar-only variant of `error` for hot loops.
long error_total(const TokenInventory& inv, const Program& p, const Specification& spec,
                 Metric metric = Metric::Edit);

/// Program equivalence under the example set: every output matches exactly.
bool satisfies(const TokenInventory& inv, const Program& p, const Specification& spec);

// JSON-lines: one {"input": ..., "output": ...} object per line.
Specification parse_specification(std::string_view jsonl);
Specification load_specification(const std::filesystem::path& path);
std::string format_specification(const Specification& spec);

}  // namespace contsynth
