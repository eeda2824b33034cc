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

#include "contsynth/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "contsynth/error.hpp"
#include "contsynth/interpreter.hpp"
#include "contsynth/json_io.hpp"

namespace contsynth {

Value random_input(Rng& rng, bool exercise_predicates) {
  static constexpr int kMagnitudes[] = {8, 16, 32, 64, 128, 256};
  std::uniform_int_distribution<int> length_dist(3, static_cast<int>(kMaxListLength));
  std::uniform_int_distribution<std::size_t> tier(0, std::size(kMagnitudes) - 1);
  while (true) {
    const int m = kMagnitudes[tier(rng)];
    std::uniform_int_distribution<int> value_dist(std::max(-m, kMinInt), std::min(m - 1, kMaxInt));
    std::vector<int> xs(static_cast<std::size_t>(length_dist(rng)));
    for (int& x : xs) x = value_dist(rng);
    if (exercise_predicates) {
      const bool negative = std::any_of(xs.begin(), xs.end(), [](int x) { return x < 0; });
      const bool even = std::any_of(xs.begin(), xs.end(), [](int x) { return x % 2 == 0; });
      if (!negative || !even) continue;
    }
    return Value::list(std::move(xs));
  }
}

std::vector<Value> make_probes(Rng& rng, int count) {
  std::vector<Value> probes;
  probes.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) probes.push_back(random_input(rng));
  return probes;
}

bool is_redundant(const TokenInventory& inv, const Program& p, std::span<const Value> probes) {
  std::vector<Value> reference;
  std::vector<const Value*> inputs;
  for (const auto& x : probes) {
    Value out = execute(inv, p, x);
    if (out.is_null()) continue;
    reference.push_back(std::move(out));
    inputs.push_back(&x);
  }

  auto unchanged_without = [&](std::size_t at, std::size_t width) {
    Program shorter;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i < at || i >= at + width) shorter.tokens.push_back(p.tokens[i]);
    }
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      if (!(execute(inv, shorter, *inputs[k]) == reference[k])) return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < p.size(); ++i) {
    if (unchanged_without(i, 1)) return true;
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (unchanged_without(i, 2)) return true;
  }
  return false;
}

Program generate_program(int length, const TokenInventory& inv, Rng& rng,
                         std::span<const Value> probes) {
  if (length < 1) throw Error(ErrorCode::ConfigError, "program length must be >= 1");
  std::uniform_int_distribution<std::size_t> pick(0, inv.size() - 1);
  Program p;
  p.tokens.resize(static_cast<std::size_t>(length));
  for (long attempt = 0; attempt < kMaxProgramRejections; ++attempt) {
    for (auto& t : p.tokens) t = static_cast<std::uint16_t>(pick(rng));
    const bool productive = std::any_of(probes.begin(), probes.end(), [&](const Value& x) {
      return !execute(inv, p, x).is_null();
    });
    if (productive && !is_redundant(inv, p, probes)) return p;
  }
  throw Error(ErrorCode::GenerationExhausted,
              "no acceptable program of length " + std::to_string(length));
}

Specification generate_spec(const TokenInventory& inv, const Program& p, int count, Rng& rng) {
  Specification spec;
  long attempts = 0;
  while (static_cast<int>(spec.examples.size()) < count) {
    if (++attempts > kMaxInputRejections) {
      throw Error(ErrorCode::SpecGenerationExhausted, format_program(p, inv));
    }
    Value input = random_input(rng, spec.examples.empty());
    Value output = execute(inv, p, input);
    if (output.is_null()) continue;
    spec.examples.push_back({std::move(input), std::move(output)});
  }
  return spec;
}

std::vector<CorpusEntry> generate_corpus(const TokenInventory& inv, std::span<const int> lengths,
                                         int count_per_length, std::uint64_t seed, int examples) {
  Rng rng(seed);
  const auto probes = make_probes(rng);
  std::set<std::vector<std::uint16_t>> seen;
  std::vector<CorpusEntry> corpus;
  for (int length : lengths) {
    int made = 0;
    long failures = 0;
    while (made < count_per_length) {
      Program p = generate_program(length, inv, rng, probes);
      if (seen.contains(p.tokens)) {
        if (++failures > kMaxProgramRejections) {
          throw Error(ErrorCode::GenerationExhausted, "too many duplicate programs");
        }
        continue;
      }
      Specification spec;
      try {
        spec = generate_spec(inv, p, examples, rng);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SpecGenerationExhausted || ++failures > kMaxProgramRejections) throw;
        continue;
      }
      seen.insert(p.tokens);
      corpus.push_back({std::move(p), std::move(spec)});
      ++made;
    }
  }
  return corpus;
}

TokenProbabilities estimate_token_probs(std::span<const CorpusEntry> corpus,
                                        std::size_t inventory_size) {
  std::vector<double> counts(inventory_size, 0.0);
  for (const auto& entry : corpus) {
    for (auto t : entry.program.tokens) counts.at(t) += 1.0;
  }
  return TokenProbabilities::from_weights(counts);
}

std::string format_corpus(std::span<const CorpusEntry> corpus, const TokenInventory& inv) {
  std::string out;
  for (const auto& entry : corpus) {
    nlohmann::json j;
    j["program"] = format_program(entry.program, inv);
    j["length"] = entry.length();
    j["examples"] = nlohmann::json::array();
    for (const auto& ex : entry.spec.examples) j["examples"].push_back(example_to_json(ex));
    out += j.dump() + '\n';
  }
  return out;
}

std::vector<CorpusEntry> parse_corpus(std::string_view jsonl, const TokenInventory& inv) {
  std::vector<CorpusEntry> corpus;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CorpusEntry entry;
      entry.program = parse_program(j.at("program").get<std::string>(), inv);
      for (const auto& ex : j.at("examples")) entry.spec.examples.push_back(example_from_json(ex));
      if (entry.spec.examples.empty()) throw Error(ErrorCode::BadSpecification, "no examples");
      corpus.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadSpecification, "corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return corpus;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path, const TokenInventory& inv) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), inv);
}

}  // namespace contsynth
