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

#include "contsynth/spec.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <span>
#include <sstream>

#include "contsynth/error.hpp"
#include "contsynth/interpreter.hpp"
#include "contsynth/json_io.hpp"

namespace contsynth {

std::string_view to_string(Metric m) { return m == Metric::Edit ? "edit" : "manhattan"; }

Metric parse_metric(std::string_view text) {
  if (text == "edit") return Metric::Edit;
  if (text == "manhattan") return Metric::Manhattan;
  throw Error(ErrorCode::ConfigError, "unknown metric '" + std::string(text) + "'");
}

namespace {

std::span<const int> as_sequence(const Value& v, int& scratch) {
  if (v.is_int()) {
    scratch = v.as_int();
    return {&scratch, 1};
  }
  return v.as_list();
}

long null_penalty(const Value& other) {
  return static_cast<long>(std::max<std::size_t>(other.length(), 1)) + kNullPenaltyOffset;
}

long levenshtein(std::span<const int> a, std::span<const int> b) {
  if (a.size() < b.size()) std::swap(a, b);
  // b is the shorter side; one row of the DP table suffices.
  std::array<long, kMaxListLength + 2> row_buf{};
  std::vector<long> row_heap;
  long* row = row_buf.data();
  if (b.size() + 1 > row_buf.size()) {
    row_heap.resize(b.size() + 1);
    row = row_heap.data();
  }
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<long>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    long diag = row[0];
    row[0] = static_cast<long>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const long up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

long edit_distance(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) {
    if (a.is_null() && b.is_null()) return 0;
    return null_penalty(a.is_null() ? b : a);
  }
  int sa = 0, sb = 0;
  const long lev = levenshtein(as_sequence(a, sa), as_sequence(b, sb));
  // max() with the kind-mismatch indicator keeps this a metric while
  // separating Int 5 from [5].
  return std::max(lev, a.kind() != b.kind() ? 1L : 0L);
}

long manhattan_distance(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) {
    if (a.is_null() && b.is_null()) return 0;
    return null_penalty(a.is_null() ? b : a) * kManhattanGap;
  }
  int sa = 0, sb = 0;
  const auto xs = as_sequence(a, sa);
  const auto ys = as_sequence(b, sb);
  const std::size_t overlap = std::min(xs.size(), ys.size());
  long d = 0;
  for (std::size_t i = 0; i < overlap; ++i) d += std::labs(static_cast<long>(xs[i]) - ys[i]);
  d += kManhattanGap * static_cast<long>(std::max(xs.size(), ys.size()) - overlap);
  return std::max(d, a.kind() != b.kind() ? 1L : 0L);
}

long distance(Metric m, const Value& a, const Value& b) {
  return m == Metric::Edit ? edit_distance(a, b) : manhattan_distance(a, b);
}

ErrorVector error(const TokenInventory& inv, const Program& p, const Specification& spec,
                  Metric metric) {
  ErrorVector out;
  out.per_example.reserve(spec.size());
  for (const auto& ex : spec.examples) {
    const long e = distance(metric, execute(inv, p, ex.input), ex.output);
    out.per_example.push_back(e);
    out.total += e;
  }
  return out;
}

long error_total(const TokenInventory& inv, const Program& p, const Specification& spec,
                 Metric metric) {
  long total = 0;
  for (const auto& ex : spec.examples) total += distance(metric, execute(inv, p, ex.input), ex.output);
  return total;
}

bool satisfies(const TokenInventory& inv, const Program& p, const Specification& spec) {
  return std::all_of(spec.examples.begin(), spec.examples.end(), [&](const IOExample& ex) {
    return execute(inv, p, ex.input) == ex.output;
  });
}

Value value_from_json(const nlohmann::json& j) {
  auto checked = [](const nlohmann::json& e) {
    if (!e.is_number_integer()) {
      throw Error(ErrorCode::BadSpecification, "expected integer, got " + e.dump());
    }
    const auto v = e.get<long long>();
    if (!in_range(v)) {
      throw Error(ErrorCode::BadSpecification, "integer out of range: " + std::to_string(v));
    }
    return static_cast<int>(v);
  };
  if (j.is_array()) {
    if (j.size() > kMaxListLength) throw Error(ErrorCode::BadSpecification, "list longer than 20");
    std::vector<int> xs;
    xs.reserve(j.size());
    for (const auto& e : j) xs.push_back(checked(e));
    return Value::list(std::move(xs));
  }
  return Value::integer(checked(j));
}

nlohmann::json value_to_json(const Value& v) {
  if (v.is_int()) return v.as_int();
  if (v.is_list()) return nlohmann::json(v.as_list());
  return nullptr;
}

IOExample example_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("input") || !j.contains("output")) {
    throw Error(ErrorCode::BadSpecification, "example needs 'input' and 'output' fields");
  }
  return {value_from_json(j.at("input")), value_from_json(j.at("output"))};
}

nlohmann::json example_to_json(const IOExample& ex) {
  nlohmann::json j;
  j["input"] = value_to_json(ex.input);
  j["output"] = value_to_json(ex.output);
  return j;
}

Specification parse_specification(std::string_view jsonl) {
  Specification spec;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::BadSpecification, "line " + std::to_string(line_no) + ": " + e.what());
    }
    spec.examples.push_back(example_from_json(j));
  }
  if (spec.examples.empty()) throw Error(ErrorCode::BadSpecification, "no examples");
  return spec;
}

Specification load_specification(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_specification(buf.str());
}

std::string format_specification(const Specification& spec) {
  std::string out;
  for (const auto& ex : spec.examples) out += example_to_json(ex).dump() + '\n';
  return out;
}

}  // namespace contsynth
