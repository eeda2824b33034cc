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

#include "contsynth/dsl.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "contsynth/error.hpp"

namespace contsynth {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownToken: return "UnknownToken";
    case ErrorCode::EmptyProgram: return "EmptyProgram";
    case ErrorCode::BadInventory: return "BadInventory";
    case ErrorCode::BadSpecification: return "BadSpecification";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotEnoughRanked: return "NotEnoughRanked";
    case ErrorCode::DegenerateProbabilities: return "DegenerateProbabilities";
    case ErrorCode::LengthExceedsInventory: return "LengthExceedsInventory";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MissingProbabilities: return "MissingProbabilities";
    case ErrorCode::GenerationExhausted: return "GenerationExhausted";
    case ErrorCode::SpecGenerationExhausted: return "SpecGenerationExhausted";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::FirstOrder: return "first-order";
    case TokenKind::Map: return "map";
    case TokenKind::Filter: return "filter";
    case TokenKind::Count: return "count";
    case TokenKind::ScanL1: return "scanl1";
    case TokenKind::ZipWith: return "zipwith";
  }
  return "?";
}

TokenKind parse_token_kind(std::string_view text) {
  for (auto k : {TokenKind::FirstOrder, TokenKind::Map, TokenKind::Filter, TokenKind::Count,
                 TokenKind::ScanL1, TokenKind::ZipWith}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorCode::BadInventory, "unknown token kind '" + std::string(text) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view s, int& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void bad_param(TokenKind kind, const std::string& param) {
  throw Error(ErrorCode::BadInventory,
              "bad parameter '" + param + "' for kind " + std::string(to_string(kind)));
}

}  // namespace

Token make_token(int id, std::string name, TokenKind kind, std::string param) {
  Token t;
  t.id = id;
  t.name = std::move(name);
  t.kind = kind;
  t.param = std::move(param);
  const std::string_view p = t.param;

  switch (kind) {
    case TokenKind::FirstOrder: {
      static const std::pair<std::string_view, Op> plain[] = {
          {"head", Op::Head},       {"last", Op::Last},       {"reverse", Op::Reverse},
          {"sort", Op::Sort},       {"sum", Op::Sum},         {"minimum", Op::Minimum},
          {"maximum", Op::Maximum},
      };
      for (const auto& [key, op] : plain) {
        if (p == key) {
          t.op = op;
          return t;
        }
      }
      const auto colon = p.find(':');
      if (colon == std::string_view::npos) bad_param(kind, t.param);
      const auto head = p.substr(0, colon);
      if (head == "take") t.op = Op::Take;
      else if (head == "drop") t.op = Op::Drop;
      else bad_param(kind, t.param);
      if (!parse_int(p.substr(colon + 1), t.arg) || t.arg < 0) bad_param(kind, t.param);
      return t;
    }
    case TokenKind::Map: {
      if (p == "^2") {
        t.op = Op::Square;
        return t;
      }
      if (p.size() < 2) bad_param(kind, t.param);
      int k = 0;
      if (!parse_int(p.substr(1), k)) bad_param(kind, t.param);
      switch (p.front()) {
        case '+': t.op = Op::Add; t.arg = k; break;
        case '-': t.op = Op::Add; t.arg = -k; break;
        case '*': t.op = Op::Mul; t.arg = k; break;
        case '/':
          if (k == 0) bad_param(kind, t.param);
          t.op = Op::Div;
          t.arg = k;
          break;
        default: bad_param(kind, t.param);
      }
      return t;
    }
    case TokenKind::Filter:
    case TokenKind::Count: {
      if (p == ">0") t.op = Op::Positive;
      else if (p == "<0") t.op = Op::Negative;
      else if (p == "even") t.op = Op::Even;
      else if (p == "odd") t.op = Op::Odd;
      else bad_param(kind, t.param);
      return t;
    }
    case TokenKind::ScanL1:
    case TokenKind::ZipWith: {
      if (p == "+") t.op = Op::Plus;
      else if (p == "-") t.op = Op::Minus;
      else if (p == "*") t.op = Op::Times;
      else if (p == "min") t.op = Op::Min;
      else if (p == "max") t.op = Op::Max;
      else bad_param(kind, t.param);
      return t;
    }
  }
  bad_param(kind, t.param);
}

TokenInventory::TokenInventory(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.size() < 2) throw Error(ErrorCode::BadInventory, "inventory needs at least 2 tokens");
  if (tokens_.size() > 0xFFFF) throw Error(ErrorCode::BadInventory, "inventory too large");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].id != static_cast<int>(i) + 1) {
      throw Error(ErrorCode::BadInventory, "token ids must be dense and start at 1");
    }
    if (!by_name_.emplace(tokens_[i].name, static_cast<int>(i)).second) {
      throw Error(ErrorCode::BadInventory, "duplicate token name '" + tokens_[i].name + "'");
    }
  }
}

TokenInventory TokenInventory::standard() {
  struct Row {
    const char* name;
    TokenKind kind;
    const char* param;
  };
  using K = TokenKind;
  static const Row rows[] = {
      {"Head", K::FirstOrder, "head"},       {"Last", K::FirstOrder, "last"},
      {"Reverse", K::FirstOrder, "reverse"}, {"Sort", K::FirstOrder, "sort"},
      {"Sum", K::FirstOrder, "sum"},         {"Minimum", K::FirstOrder, "minimum"},
      {"Maximum", K::FirstOrder, "maximum"}, {"Take(2)", K::FirstOrder, "take:2"},
      {"Take(3)", K::FirstOrder, "take:3"},  {"Take(4)", K::FirstOrder, "take:4"},
      {"Drop(2)", K::FirstOrder, "drop:2"},  {"Drop(3)", K::FirstOrder, "drop:3"},
      {"Drop(4)", K::FirstOrder, "drop:4"},
      {"Map(+1)", K::Map, "+1"},   {"Map(-1)", K::Map, "-1"},   {"Map(*2)", K::Map, "*2"},
      {"Map(*3)", K::Map, "*3"},   {"Map(*4)", K::Map, "*4"},   {"Map(/2)", K::Map, "/2"},
      {"Map(/3)", K::Map, "/3"},   {"Map(/4)", K::Map, "/4"},   {"Map(*-1)", K::Map, "*-1"},
      {"Map(^2)", K::Map, "^2"},
      {"Filter(>0)", K::Filter, ">0"},     {"Filter(<0)", K::Filter, "<0"},
      {"Filter(Even)", K::Filter, "even"}, {"Filter(Odd)", K::Filter, "odd"},
      {"Count(>0)", K::Count, ">0"},       {"Count(<0)", K::Count, "<0"},
      {"Count(Even)", K::Count, "even"},   {"Count(Odd)", K::Count, "odd"},
      {"ScanL1(+)", K::ScanL1, "+"},       {"ScanL1(-)", K::ScanL1, "-"},
      {"ScanL1(*)", K::ScanL1, "*"},       {"ScanL1(min)", K::ScanL1, "min"},
      {"ScanL1(max)", K::ScanL1, "max"},
      {"ZipWith(+)", K::ZipWith, "+"},     {"ZipWith(-)", K::ZipWith, "-"},
      {"ZipWith(*)", K::ZipWith, "*"},     {"ZipWith(min)", K::ZipWith, "min"},
      {"ZipWith(max)", K::ZipWith, "max"},
  };
  std::vector<Token> tokens;
  tokens.reserve(std::size(rows));
  int id = 1;
  for (const auto& r : rows) tokens.push_back(make_token(id++, r.name, r.kind, r.param));
  return TokenInventory(std::move(tokens));
}

TokenInventory TokenInventory::subset(const TokenInventory& base,
                                      std::span<const std::string> names) {
  std::vector<Token> tokens;
  int id = 1;
  for (const auto& name : names) {
    const int idx = base.find(name);
    if (idx < 0) throw Error(ErrorCode::UnknownToken, name);
    const Token& src = base[static_cast<std::size_t>(idx)];
    tokens.push_back(make_token(id++, src.name, src.kind, src.param));
  }
  return TokenInventory(std::move(tokens));
}

TokenInventory TokenInventory::parse(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t fpos = 0;
    while (true) {
      const auto tab = line.find('\t', fpos);
      fields.push_back(line.substr(fpos, tab == std::string_view::npos ? line.npos : tab - fpos));
      if (tab == std::string_view::npos) break;
      fpos = tab + 1;
    }
    if (fields.size() != 4) {
      throw Error(ErrorCode::BadInventory,
                  "line " + std::to_string(line_no) + ": expected id<TAB>name<TAB>kind<TAB>param");
    }
    int id = 0;
    if (!parse_int(fields[0], id)) {
      throw Error(ErrorCode::BadInventory, "line " + std::to_string(line_no) + ": bad id");
    }
    tokens.push_back(make_token(id, std::string(fields[1]), parse_token_kind(fields[2]),
                                std::string(fields[3])));
  }
  return TokenInventory(std::move(tokens));
}

TokenInventory TokenInventory::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string TokenInventory::serialize() const {
  std::string out;
  for (const auto& t : tokens_) {
    out += std::to_string(t.id) + '\t' + t.name + '\t' + std::string(to_string(t.kind)) + '\t' +
           t.param + '\n';
  }
  return out;
}

int TokenInventory::find(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? -1 : it->second;
}

Program parse_program(std::string_view text, const TokenInventory& inv) {
  Program p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find_first_of(",\n", pos);
    if (end == std::string_view::npos) end = text.size();
    const auto name = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (name.empty()) continue;
    const int idx = inv.find(name);
    if (idx < 0) throw Error(ErrorCode::UnknownToken, std::string(name));
    p.tokens.push_back(static_cast<std::uint16_t>(idx));
  }
  if (p.empty()) throw Error(ErrorCode::EmptyProgram, "no tokens in program text");
  return p;
}

std::string format_program(const Program& p, const TokenInventory& inv) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += inv[p.tokens[i]].name;
  }
  return out;
}

}  // namespace contsynth
