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
#include <span>
#include <string>
#include <vector>

#include "contsynth/corpus.hpp"
#include "contsynth/synthesizer.hpp"

namespace contsynth {

/// Named synthesis setup. The per-entry target length overrides
/// `config.length`; the per-run seed overrides `config.seed`.
struct BenchConfig {
  std::string name;
  SynthesisConfig config;
};

/// Default name: scheme/policy/bins/init/check/metric.
std::string describe(const SynthesisConfig& config);

struct BenchRow {
  std::size_t run = 0;
  std::size_t entry = 0;
  std::size_t config = 0;
  std::uint64_t seed = 0;
  int length = 0;
  SynthesisResult result;
};

struct BenchAggregate {
  std::string config;
  std::size_t total = 0;
  std::size_t solved = 0;
  double percentage = 0;  // 100 * solved / total
  std::vector<double> solved_times;  // rounded to microseconds, ascending
  double mean_programs_explored = 0;
};

/// Worker count from CONTSYNTH_THREADS, else the hardware concurrency.
int default_bench_threads();

/// Runs every (entry, config, seed) triple; rows come back in run order
/// regardless of the worker count.
std::vector<BenchRow> run_bench(const TokenInventory& inv, std::span<const CorpusEntry> corpus,
                                std::span<const BenchConfig> configs,
                                std::span<const std::uint64_t> seeds,
                                const TokenProbabilities* probs, int threads);

BenchAggregate aggregate(std::span<const BenchRow> rows, std::size_t config,
                         const std::string& name);

/// Linear-interpolation quantile of an ascending sample.
double quantile(std::span<const double> sorted, double q);

inline constexpr int kBenchCsvVersion = 1;

/// Row-per-run CSV followed by one aggregate block per config. Without
/// timing the wall-clock columns are left out, which makes the file a pure
/// function of (corpus, configs, seeds) when no time budget binds.
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows,
                     std::span<const BenchConfig> configs, std::span<const CorpusEntry> corpus,
                     const TokenInventory& inv, bool with_timing);

}  // namespace contsynth
