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

#include "contsynth/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <thread>

namespace contsynth {

std::string describe(const SynthesisConfig& c) {
  return std::string(to_string(c.scheme)) + '/' + policy_name(c) + '/' +
         std::string(to_string(c.bins)) + '/' + std::string(to_string(c.gene_init)) + '/' +
         std::string(to_string(c.check)) + '/' + std::string(to_string(c.metric));
}

int default_bench_threads() {
  if (const char* env = std::getenv("CONTSYNTH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BenchRow> run_bench(const TokenInventory& inv, std::span<const CorpusEntry> corpus,
                                std::span<const BenchConfig> configs,
                                std::span<const std::uint64_t> seeds,
                                const TokenProbabilities* probs, int threads) {
  std::vector<BenchRow> rows;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t e = 0; e < corpus.size(); ++e) {
      for (auto seed : seeds) {
        BenchRow row;
        row.run = rows.size();
        row.entry = e;
        row.config = c;
        row.seed = seed;
        row.length = static_cast<int>(corpus[e].length());
        rows.push_back(row);
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      auto& row = rows[i];
      SynthesisConfig config = configs[row.config].config;
      config.length = row.length;
      config.seed = row.seed;
      row.result = synthesize(inv, corpus[row.entry].spec, config, probs);
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, threads));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(n, rows.size()); ++t) pool.emplace_back(worker);
  }
  return rows;
}

namespace {

double round_micro(double t) { return std::round(t * 1e6) / 1e6; }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) return std::nan("");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

BenchAggregate aggregate(std::span<const BenchRow> rows, std::size_t config,
                         const std::string& name) {
  BenchAggregate agg;
  agg.config = name;
  double explored = 0;
  for (const auto& row : rows) {
    if (row.config != config) continue;
    ++agg.total;
    explored += static_cast<double>(row.result.programs_explored);
    if (row.result.found) {
      ++agg.solved;
      agg.solved_times.push_back(round_micro(row.result.wall_time));
    }
  }
  std::sort(agg.solved_times.begin(), agg.solved_times.end());
  if (agg.total > 0) {
    agg.percentage = 100.0 * static_cast<double>(agg.solved) / static_cast<double>(agg.total);
    agg.mean_programs_explored = explored / static_cast<double>(agg.total);
  }
  return agg;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows,
                     std::span<const BenchConfig> configs, std::span<const CorpusEntry> corpus,
                     const TokenInventory& inv, bool with_timing) {
  out << "# contsynth bench v" << kBenchCsvVersion << '\n';
  out << "run,entry,config,seed,length,target,solved,stop_reason,generations,restarts,"
         "programs_explored";
  if (with_timing) out << ",wall_time_s";
  out << ",found\n";
  for (const auto& row : rows) {
    const auto& r = row.result;
    out << row.run << ',' << row.entry << ',' << configs[row.config].name << ',' << row.seed << ','
        << row.length << ",\"" << format_program(corpus[row.entry].program, inv) << "\","
        << (r.found ? 1 : 0) << ',' << to_string(r.stop_reason) << ',' << r.generations << ','
        << r.restarts << ',' << r.programs_explored;
    if (with_timing) out << ',' << fixed(round_micro(r.wall_time), 6);
    out << ",\"" << (r.found ? format_program(*r.found, inv) : std::string()) << "\"\n";
  }

  out << "\n# aggregate\n";
  out << "config,total,solved,percentage";
  if (with_timing) out << ",time_min,time_q25,time_median,time_q75,time_max";
  out << ",mean_programs_explored\n";
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto agg = aggregate(rows, c, configs[c].name);
    out << agg.config << ',' << agg.total << ',' << agg.solved << ',' << fixed(agg.percentage, 1);
    if (with_timing) {
      for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        out << ',' << (agg.solved_times.empty() ? std::string("NA") : fixed(quantile(agg.solved_times, q), 6));
      }
    }
    out << ',' << fixed(agg.mean_programs_explored, 1) << '\n';
  }
}

}  // namespace contsynth
