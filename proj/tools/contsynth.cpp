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

// contsynth: corpus generation, single synthesis runs, benchmarks and
// optimizer self-tests.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "contsynth/bench.hpp"
#include "contsynth/corpus.hpp"
#include "contsynth/error.hpp"
#include "contsynth/selftest.hpp"
#include "contsynth/synthesizer.hpp"

using namespace contsynth;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

// "5-10", "4" or "3,5,7"
std::vector<int> parse_lengths(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(std::stoi(part));
    } else {
      const int lo = std::stoi(part.substr(0, dash));
      const int hi = std::stoi(part.substr(dash + 1));
      for (int l = lo; l <= hi; ++l) out.push_back(l);
    }
  }
  if (out.empty()) throw Error(ErrorCode::ConfigError, "no lengths given");
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << contents;
}

TokenInventory load_inventory(const std::string& path) {
  return path.empty() ? TokenInventory::standard() : TokenInventory::load(path);
}

struct CommonFlags {
  std::string inventory;
  std::string probs;
  std::string metric = "edit";
  double budget = 60.0;
  long max_evals = 0;
  int lambda = 0;
  double sigma0 = 1.0;
  bool free_end_bins = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--inventory", f.inventory, "Token inventory file (default: built-in 41 tokens)");
  cmd->add_option("--probs", f.probs, "Token-probability file for biased bins / learned init");
  cmd->add_option("--metric", f.metric, "edit | manhattan");
  cmd->add_option("--budget", f.budget, "Time budget per run, seconds");
  cmd->add_option("--max-evals", f.max_evals, "Programs-explored budget per run (0 = none)");
  cmd->add_option("--lambda", f.lambda, "Initial population size (0 = default)");
  cmd->add_option("--sigma0", f.sigma0, "Initial step size");
  cmd->add_flag("--free-end-bins", f.free_end_bins, "Do not break error ties towards the end-bin midpoints");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Program synthesis by continuous optimization over a list DSL"};
  app.require_subcommand(1);

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "Generate random target programs and their specs");
  std::string gen_lengths = "5-10", gen_out, gen_inventory, gen_probs_out;
  int gen_count = 100, gen_examples = kDefaultExamples;
  std::uint64_t gen_seed = 1;
  gen->add_option("--lengths", gen_lengths, "Program lengths, e.g. 5-10 or 4 or 3,5");
  gen->add_option("--count", gen_count, "Programs per length");
  gen->add_option("--examples", gen_examples, "Input-output examples per program");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "Output corpus file (JSON lines)")->required();
  gen->add_option("--inventory", gen_inventory, "Token inventory file");
  gen->add_option("--probs-out", gen_probs_out, "Also write corpus token frequencies here");

  // probs
  auto* probs_cmd = app.add_subcommand("probs", "Estimate token probabilities from a corpus");
  std::string probs_corpus, probs_out, probs_inventory;
  probs_cmd->add_option("corpus", probs_corpus, "Corpus file")->required();
  probs_cmd->add_option("--out", probs_out, "Output file (default stdout)");
  probs_cmd->add_option("--inventory", probs_inventory, "Token inventory file");

  // inventory
  auto* inv_cmd = app.add_subcommand("inventory", "Print the built-in token inventory file");

  // synth
  auto* synth = app.add_subcommand("synth", "Synthesize a program for one specification");
  CommonFlags sf;
  std::string synth_spec, synth_scheme = "bin", synth_policy = "PB+CB", synth_bins, synth_init = "normal",
                          synth_check = "full", synth_trace;
  int synth_length = 0, synth_threads = 1;
  std::uint64_t synth_seed = 1;
  bool synth_trace_mean = false;
  synth->add_option("spec", synth_spec, "Specification file (JSON lines)")->required();
  synth->add_option("--length", synth_length, "Target program length")->required();
  synth->add_option("--scheme", synth_scheme, "bin | dynamic-bin | single-group | multi-group | dynamic-multi-group");
  synth->add_option("--policy", synth_policy, "none | PB | MB | CB | PB+MB | PB+CB | MB+CB | PB+MB+CB");
  synth->add_option("--bins", synth_bins, "uniform | biased (default: biased when --probs is given)");
  synth->add_option("--init", synth_init, "normal | learned");
  synth->add_option("--check", synth_check, "full | sub");
  synth->add_option("--seed", synth_seed, "RNG seed");
  synth->add_option("--trace", synth_trace, "Write per-generation CMA-ES trace CSV");
  synth->add_flag("--trace-mean", synth_trace_mean, "Include the mean vector in the trace");
  synth->add_option("--threads", synth_threads, "Candidate-evaluation threads");
  add_common(synth, sf);

  // bench
  auto* bench = app.add_subcommand("bench", "Run a configuration matrix over a corpus");
  CommonFlags bf;
  std::string bench_corpus, bench_out, bench_schemes = "bin", bench_policies = "PB+CB",
                            bench_bins = "biased", bench_inits = "normal", bench_checks = "full",
                            bench_seeds = "1";
  int bench_threads = 0;
  bool bench_omit_timing = false;
  bench->add_option("corpus", bench_corpus, "Corpus file")->required();
  bench->add_option("--out", bench_out, "Output CSV (default stdout)");
  bench->add_option("--scheme", bench_schemes, "Comma-separated mapping schemes");
  bench->add_option("--policy", bench_policies, "Comma-separated restart policies");
  bench->add_option("--bins", bench_bins, "Comma-separated bin types");
  bench->add_option("--init", bench_inits, "Comma-separated gene initializations");
  bench->add_option("--check", bench_checks, "Comma-separated check modes");
  bench->add_option("--seeds", bench_seeds, "Comma-separated seeds");
  bench->add_option("--threads", bench_threads, "Worker count (default: CONTSYNTH_THREADS or cores)");
  bench->add_flag("--omit-timing", bench_omit_timing, "Leave wall-clock columns out of the CSV");
  add_common(bench, bf);

  // selftest
  auto* self = app.add_subcommand("selftest", "CMA-ES convergence and invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      const auto inv = load_inventory(gen_inventory);
      const auto lengths = parse_lengths(gen_lengths);
      const auto corpus = generate_corpus(inv, lengths, gen_count, gen_seed, gen_examples);
      write_file(gen_out, format_corpus(corpus, inv));
      if (!gen_probs_out.empty()) {
        write_file(gen_probs_out, estimate_token_probs(corpus, inv.size()).serialize(inv));
      }
      std::cerr << "wrote " << corpus.size() << " entries to " << gen_out << '\n';
      return 0;
    }

    if (*probs_cmd) {
      const auto inv = load_inventory(probs_inventory);
      const auto corpus = load_corpus(probs_corpus, inv);
      if (corpus.empty()) throw Error(ErrorCode::BadSpecification, "empty corpus");
      const auto text = estimate_token_probs(corpus, inv.size()).serialize(inv);
      if (probs_out.empty()) std::cout << text;
      else write_file(probs_out, text);
      return 0;
    }

    if (*inv_cmd) {
      std::cout << TokenInventory::standard().serialize();
      return 0;
    }

    if (*synth) {
      const auto inv = load_inventory(sf.inventory);
      const auto spec = load_specification(synth_spec);
      std::unique_ptr<TokenProbabilities> probs;
      if (!sf.probs.empty()) probs = std::make_unique<TokenProbabilities>(TokenProbabilities::load(sf.probs, inv));

      SynthesisConfig config;
      config.length = synth_length;
      config.scheme = parse_scheme(synth_scheme);
      apply_policy_name(config, synth_policy);
      config.bins = synth_bins.empty() ? (probs ? BinType::Biased : BinType::Uniform)
                                       : parse_bin_type(synth_bins);
      config.gene_init = parse_gene_init(synth_init);
      config.check = parse_check_mode(synth_check);
      config.metric = parse_metric(sf.metric);
      config.time_budget = sf.budget;
      config.max_evaluations = sf.max_evals;
      config.seed = synth_seed;
      config.lambda = sf.lambda;
      config.sigma0 = sf.sigma0;
      config.anchor_end_bins = !sf.free_end_bins;
      config.eval_threads = synth_threads;

      std::ofstream trace_file;
      if (!synth_trace.empty()) {
        trace_file.open(synth_trace);
        if (!trace_file) throw Error(ErrorCode::IoError, "cannot write " + synth_trace);
      }
      const auto result = synthesize(inv, spec, config, probs.get(),
                                     synth_trace.empty() ? nullptr : &trace_file, synth_trace_mean);
      std::cout << result_to_json(result, config, inv).dump(2) << '\n';
      return result.found ? 0 : 2;
    }

    if (*bench) {
      const auto inv = load_inventory(bf.inventory);
      const auto corpus = load_corpus(bench_corpus, inv);
      if (corpus.empty()) throw Error(ErrorCode::BadSpecification, "empty corpus");

      std::vector<BenchConfig> configs;
      for (const auto& scheme : split(bench_schemes, ','))
        for (const auto& policy : split(bench_policies, ','))
          for (const auto& bins : split(bench_bins, ','))
            for (const auto& init : split(bench_inits, ','))
              for (const auto& check : split(bench_checks, ',')) {
                SynthesisConfig c;
                c.scheme = parse_scheme(scheme);
                apply_policy_name(c, policy);
                c.bins = parse_bin_type(bins);
                c.gene_init = parse_gene_init(init);
                c.check = parse_check_mode(check);
                c.metric = parse_metric(bf.metric);
                c.time_budget = bf.budget;
                c.max_evaluations = bf.max_evals;
                c.lambda = bf.lambda;
                c.sigma0 = bf.sigma0;
                c.anchor_end_bins = !bf.free_end_bins;
                configs.push_back({describe(c), c});
              }

      std::vector<std::uint64_t> seeds;
      for (const auto& s : split(bench_seeds, ',')) seeds.push_back(std::stoull(s));

      const TokenProbabilities probs = bf.probs.empty()
                                           ? estimate_token_probs(corpus, inv.size())
                                           : TokenProbabilities::load(bf.probs, inv);
      const int threads = bench_threads > 0 ? bench_threads : default_bench_threads();
      const auto rows = run_bench(inv, corpus, configs, seeds, &probs, threads);

      std::ostringstream csv;
      write_bench_csv(csv, rows, configs, corpus, inv, !bench_omit_timing);
      if (bench_out.empty()) std::cout << csv.str();
      else write_file(bench_out, csv.str());
      return 0;
    }

    if (*self) {
      bool ok = true;
      for (const auto& check : selftest::run_all()) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
        ok = ok && check.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
