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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "contsynth/cmaes.hpp"
#include "contsynth/dsl.hpp"
#include "contsynth/mapping.hpp"
#include "contsynth/restart.hpp"
#include "contsynth/spec.hpp"

namespace contsynth {

enum class BinType : std::uint8_t { Uniform, Biased };
enum class GeneInit : std::uint8_t { Normal, Learned };
enum class CheckMode : std::uint8_t { Full, Sub };

std::string_view to_string(BinType b);
std::string_view to_string(GeneInit g);
std::string_view to_string(CheckMode c);
BinType parse_bin_type(std::string_view text);
GeneInit parse_gene_init(std::string_view text);
CheckMode parse_check_mode(std::string_view text);

struct SynthesisConfig {
  int length = 1;
  SchemeKind scheme = SchemeKind::Bin;
  Metric metric = Metric::Edit;
  RestartPolicy policy{.pb = true, .mb = false, .cb = true};
  bool restart_enabled = true;
  BinType bins = BinType::Biased;
  GeneInit gene_init = GeneInit::Normal;
  CheckMode check = CheckMode::Full;
  double time_budget = 60.0;           // seconds; checked between generations
  long max_evaluations = 0;            // programs explored; 0 = unlimited
  std::uint64_t seed = 1;
  double sigma0 = 1.0;
  int lambda = 0;                      // 0 = default for the genome dimension
  int max_lambda = kDefaultMaxLambda;
  int eval_threads = 1;
  bool eigen_every_generation = false;
  // Break equal-error ties in favour of genomes that stay inside the
  // end bins' midpoints, so the mean cannot wander off across a flat end bin.
  bool anchor_end_bins = true;

  /// The "Best Setup": bin mapping, PB+CB restarts, biased bins, full check.
  static SynthesisConfig best_setup(int length);

  MappingScheme mapping() const { return {scheme, length}; }
};

/// "none" selects the no-restart engine mode; anything else is a flag
/// combination with restarts enabled.
void apply_policy_name(SynthesisConfig& config, std::string_view name);
std::string policy_name(const SynthesisConfig& config);

nlohmann::json config_to_json(const SynthesisConfig& config);

enum class StopReason : std::uint8_t { Solved, Timeout, Stagnated };
std::string_view to_string(StopReason r);

struct RestartRecord {
  int generation = 0;
  cma::StagnationReason reason = cma::StagnationReason::TolStagnation;
  int lambda_after = 0;
  long programs_explored = 0;
};

struct SynthesisResult {
  std::optional<Program> found;
  double wall_time = 0;
  int generations = 0;
  int restarts = 0;
  long programs_explored = 0;
  StopReason stop_reason = StopReason::Timeout;
  std::vector<RestartRecord> restart_log;
};

nlohmann::json result_to_json(const SynthesisResult& r, const SynthesisConfig& config,
                              const TokenInventory& inv);

/// Outcome of testing one genome's candidate programs.
struct CandidateOutcome {
  long best_error = 0;
  std::optional<Program> solution;
  long checked = 0;
};

/// Tests candidates in scan order. Full mode tests each program as given;
/// Sub mode tests every prefix of each program, shortest first, skipping
/// repeats. The first satisfying program wins; best_error is the minimum
/// scalar error seen.
CandidateOutcome evaluate_candidates(const TokenInventory& inv, std::span<const Program> programs,
                                     const Specification& spec, CheckMode mode, Metric metric);

std::optional<Program> check_candidates(const TokenInventory& inv,
                                        std::span<const Program> programs,
                                        const Specification& spec, CheckMode mode,
                                        long& programs_explored);

/// Initial mean of the search distribution. Normal init is the zero vector;
/// learned init centres every bin coordinate on the most probable token's
/// bin (and favours that token in group schemes).
cma::Vector initialize_genes(const SynthesisConfig& config, std::size_t inventory_size,
                             const BinLayout& layout, const TokenProbabilities* probs);

/// Tie-break term in [0, 0.5): grows with the distance of Phi-binned
/// coordinates beyond the midpoints of their outermost bins. Zero for
/// group-mapped coordinates.
double end_bin_penalty(const MappingScheme& scheme, std::span<const double> genome,
                       const BinLayout& layout, std::size_t inventory_size);

/// Runs the sample / map / evaluate / update-or-restart loop until a program
/// satisfying `spec` is found or a budget runs out. Deterministic for a
/// fixed seed. `trace`, when given, receives one CSV row per generation.
SynthesisResult synthesize(const TokenInventory& inv, const Specification& spec,
                           const SynthesisConfig& config, const TokenProbabilities* probs = nullptr,
                           std::ostream* trace = nullptr, bool trace_mean = false);

}  // namespace contsynth
