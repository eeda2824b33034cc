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
#include <string_view>
#include <vector>

#include "contsynth/dsl.hpp"

namespace contsynth {

double normal_cdf(double x);
double normal_quantile(double u);

inline constexpr double kProbabilityFloor = 1e-4;

/// Per-token probabilities, summing to 1, each at least kProbabilityFloor.
class TokenProbabilities {
public:
  TokenProbabilities() = default;

  /// Normalizes nonnegative weights, then raises entries below the floor to
  /// exactly the floor and rescales the rest. Throws
  /// DegenerateProbabilities if that is impossible.
  static TokenProbabilities from_weights(std::span<const double> weights);
  static TokenProbabilities uniform(std::size_t n);

  /// `token_name<TAB>probability` per line; unlisted tokens get weight 0.
  static TokenProbabilities parse(std::string_view text, const TokenInventory& inv);
  static TokenProbabilities load(const std::filesystem::path& path, const TokenInventory& inv);
  std::string serialize(const TokenInventory& inv) const;

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const noexcept { return p_; }

  /// Index of the most probable token; ties go to the lowest index.
  std::size_t argmax() const;

private:
  std::vector<double> p_;
};

/// Cumulative bin boundaries over (0, 1): b_0 = 0 < b_1 < ... < b_n = 1.
struct BinLayout {
  std::vector<double> boundaries;

  std::size_t bins() const noexcept { return boundaries.empty() ? 0 : boundaries.size() - 1; }
  /// Bin j (zero-based) with u in [b_j, b_{j+1}); u >= 1 lands in the last bin.
  std::size_t locate(double u) const;
  double width(std::size_t j) const { return boundaries[j + 1] - boundaries[j]; }
};

BinLayout build_layout(const TokenProbabilities& p);

enum class SchemeKind : std::uint8_t { Bin, DynamicBin, SingleGroup, MultiGroup, DynamicMultiGroup };

std::string_view to_string(SchemeKind k);
SchemeKind parse_scheme(std::string_view text);

struct MappingScheme {
  SchemeKind kind = SchemeKind::Bin;
  int length = 1;  // target length l (l_max for DynamicBin)
};

std::size_t genome_dimension(const MappingScheme& scheme, std::size_t inventory_size);

/// Token i is the bin containing Phi(g_i).
Program bin_map(std::span<const double> genome, const BinLayout& layout);

/// Tokens of the `length` largest coordinates, largest first.
Program single_group_map(std::span<const double> genome, int length);

/// One argmax per consecutive group of `inventory_size` coordinates.
Program multi_group_map(std::span<const double> genome, std::size_t inventory_size);

/// Group counts k available for length l: divisors of l with l/k no larger
/// than the inventory, ascending.
std::vector<int> group_count_domain(int length, std::size_t inventory_size);

/// k decoded from the leading coordinate via equal bins on Phi(g_0).
int decode_group_count(double g0, int length, std::size_t inventory_size);

/// Leading coordinate selects k; group i contributes its top l/k tokens in
/// descending order at positions (i-1)*l/k + t.
Program dynamic_multi_group_map(std::span<const double> genome, std::size_t inventory_size,
                                int length);

struct DecodedCandidates {
  std::vector<Program> candidates;
  int length_hint = 0;  // DynamicBin only; diagnostic
};

/// Full program from the first l_max coordinates, emitted as all prefixes
/// (shortest first). The last coordinate decodes to a length hint.
DecodedCandidates dynamic_bin_map(std::span<const double> genome, const BinLayout& layout);

/// Dispatches on the scheme. Throws DimensionMismatch when the genome
/// length differs from genome_dimension().
DecodedCandidates decode(const MappingScheme& scheme, std::span<const double> genome,
                         const BinLayout& layout, std::size_t inventory_size);

}  // namespace contsynth
