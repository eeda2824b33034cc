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

#include <algorithm>
#include <cstdlib>
#include <map>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "contsynth/bench.hpp"
#include "contsynth/error.hpp"

using namespace contsynth;

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == sep && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "contsynth_bench_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int run(const std::string& args) {
  const std::string cmd = std::string(CONTSYNTH_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("quantiles interpolate linearly") {
  const std::vector<double> xs = {1, 2, 3, 4};
  CHECK(quantile(xs, 0.0) == 1);
  CHECK(quantile(xs, 1.0) == 4);
  CHECK(quantile(xs, 0.5) == doctest::Approx(2.5));
  CHECK(quantile(xs, 0.25) == doctest::Approx(1.75));
  const std::vector<double> one = {7};
  CHECK(quantile(one, 0.75) == 7);
}

TEST_CASE("describe") {
  auto c = SynthesisConfig::best_setup(3);
  CHECK(describe(c) == "bin/PB+CB/biased/normal/full/edit");
  apply_policy_name(c, "none");
  c.scheme = SchemeKind::MultiGroup;
  CHECK(describe(c) == "multi-group/none/biased/normal/full/edit");
}

TEST_CASE("csv aggregates agree with the rows") {
  const auto inv = TokenInventory::standard();
  const std::vector<int> lengths = {1, 2};
  const auto corpus = generate_corpus(inv, lengths, 4, 5);
  const auto probs = estimate_token_probs(corpus, inv.size());

  std::vector<BenchConfig> configs;
  for (const char* policy : {"PB+CB", "none"}) {
    auto c = SynthesisConfig::best_setup(1);
    apply_policy_name(c, policy);
    c.time_budget = 5;
    c.max_evaluations = 3000;
    configs.push_back({describe(c), c});
  }
  const std::vector<std::uint64_t> seeds = {1, 2};
  const auto rows = run_bench(inv, corpus, configs, seeds, &probs, 1);
  REQUIRE(rows.size() == corpus.size() * configs.size() * seeds.size());
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].run == i);

  std::ostringstream out;
  write_bench_csv(out, rows, configs, corpus, inv, true);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# contsynth bench v1");
  std::getline(in, line);
  const auto header = split(line);
  CHECK(header.size() == 13);

  std::map<std::string, std::pair<int, int>> counts;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(std::getline(in, line));
    const auto f = split(line);
    REQUIRE(f.size() == header.size());
    auto& [total, solved] = counts[f[2]];
    ++total;
    solved += f[6] == "1";
  }
  std::getline(in, line);
  CHECK(line.empty());
  std::getline(in, line);
  CHECK(line == "# aggregate");
  std::getline(in, line);
  CHECK(split(line).front() == "config");
  int blocks = 0;
  while (std::getline(in, line)) {
    const auto f = split(line);
    REQUIRE(counts.contains(f[0]));
    const auto [total, solved] = counts[f[0]];
    CHECK(std::stoi(f[1]) == total);
    CHECK(std::stoi(f[2]) == solved);
    std::ostringstream pct;
    pct.setf(std::ios::fixed);
    pct.precision(1);
    pct << 100.0 * solved / total;
    CHECK(f[3] == pct.str());
    const auto agg = aggregate(rows, static_cast<std::size_t>(blocks), configs[blocks].name);
    CHECK(agg.solved == static_cast<std::size_t>(solved));
    ++blocks;
  }
  CHECK(blocks == 2);
}

TEST_CASE("thread count does not change the rows") {
  const auto inv = TokenInventory::standard();
  const std::vector<int> lengths = {2};
  const auto corpus = generate_corpus(inv, lengths, 3, 8);
  auto c = SynthesisConfig::best_setup(2);
  c.bins = BinType::Uniform;
  c.time_budget = 60;
  c.max_evaluations = 2000;
  const std::vector<BenchConfig> configs = {{describe(c), c}};
  const std::vector<std::uint64_t> seeds = {3};
  std::ostringstream a, b;
  write_bench_csv(a, run_bench(inv, corpus, configs, seeds, nullptr, 1), configs, corpus, inv, false);
  write_bench_csv(b, run_bench(inv, corpus, configs, seeds, nullptr, 3), configs, corpus, inv, false);
  CHECK(a.str() == b.str());
}

TEST_CASE("cli exit codes and reproducible corpora") {
  const auto spec = scratch("sort.jsonl");
  std::ofstream(spec) << "{\"input\": [3, 1, 2], \"output\": [1, 2, 3]}\n";
  const auto bad = scratch("bad.jsonl");
  std::ofstream(bad) << "{\"input\": [3, 1, \n";

  CHECK(run("synth " + spec.string() + " --length 1 --bins uniform") == 0);
  CHECK(run("synth " + spec.string() + " --length 1 --bins uniform --budget 0") == 2);
  CHECK(run("synth " + bad.string() + " --length 1") == 1);
  CHECK(run("synth " + spec.string() + " --length 1 --scheme nope") == 1);

  const auto c1 = scratch("c1.jsonl");
  const auto c2 = scratch("c2.jsonl");
  CHECK(run("gen-corpus --lengths 2-3 --count 4 --seed 12 --out " + c1.string()) == 0);
  CHECK(run("gen-corpus --lengths 2-3 --count 4 --seed 12 --out " + c2.string()) == 0);
  const auto text = slurp(c1);
  CHECK(text == slurp(c2));
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
}
